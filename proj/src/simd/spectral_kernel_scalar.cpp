#include "vomech/simd/spectral_kernel.hpp"

#include <cmath>

#include "spectral_kernel_impl.hpp"

namespace vomech::simd {

namespace {

struct Lane1 {
    double v;
    Lane1() = default;
    Lane1(double x) : v(x) {}
    static Lane1 load(const double* p) { return Lane1(*p); }
    void store(double* p) const { *p = v; }
};

inline Lane1 operator+(Lane1 a, Lane1 b) { return a.v + b.v; }
inline Lane1 operator-(Lane1 a, Lane1 b) { return a.v - b.v; }
inline Lane1 operator*(Lane1 a, Lane1 b) { return a.v * b.v; }
inline Lane1 operator/(Lane1 a, Lane1 b) { return a.v / b.v; }
inline Lane1 operator-(Lane1 a) { return -a.v; }

} // namespace

void spectral_integrand_scalar(const KernelModel& m, const NodeBatch& b, double* out) {
    for (std::size_t i = 0; i < b.count; ++i) detail::spectral_integrand_lanes<Lane1>(m, b, i, out);
}

} // namespace vomech::simd
