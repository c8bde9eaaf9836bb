// Compiled with -mavx2 -mfma; only reached when the CPU reports both.
#include "vomech/simd/spectral_kernel.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "spectral_kernel_impl.hpp"

namespace vomech::simd {

namespace {

struct Lane4 {
    __m256d v;
    Lane4() = default;
    Lane4(double x) : v(_mm256_set1_pd(x)) {}
    Lane4(__m256d x) : v(x) {}
    static Lane4 load(const double* p) { return _mm256_loadu_pd(p); }
    void store(double* p) const { _mm256_storeu_pd(p, v); }
};

inline Lane4 operator+(Lane4 a, Lane4 b) { return _mm256_add_pd(a.v, b.v); }
inline Lane4 operator-(Lane4 a, Lane4 b) { return _mm256_sub_pd(a.v, b.v); }
inline Lane4 operator*(Lane4 a, Lane4 b) { return _mm256_mul_pd(a.v, b.v); }
inline Lane4 operator/(Lane4 a, Lane4 b) { return _mm256_div_pd(a.v, b.v); }
inline Lane4 operator-(Lane4 a) { return _mm256_xor_pd(a.v, _mm256_set1_pd(-0.0)); }

} // namespace

void spectral_integrand_avx2(const KernelModel& m, const NodeBatch& b, double* out) {
    static_assert(kBatch % 4 == 0);
    // Pad the tail lanes with the last real node so no lane divides by an
    // uninitialised value; their outputs are never read.
    NodeBatch padded;
    const NodeBatch* src = &b;
    if (b.count % 4 != 0) {
        padded = b;
        const std::size_t last = b.count - 1;
        const std::size_t end = std::min(kBatch, (b.count + 3) / 4 * 4);
        for (std::size_t i = b.count; i < end; ++i) {
            padded.omega[i] = b.omega[last];
            padded.noise[i] = b.noise[last];
            for (int j = 0; j < 2; ++j) {
                padded.tx_re[j][i] = b.tx_re[j][last];
                padded.tx_im[j][i] = b.tx_im[j][last];
                padded.ty_re[j][i] = b.ty_re[j][last];
                padded.ty_im[j][i] = b.ty_im[j][last];
            }
        }
        src = &padded;
    }
    for (std::size_t i = 0; i < b.count; i += 4) detail::spectral_integrand_lanes<Lane4>(m, *src, i, out);
}

} // namespace vomech::simd
