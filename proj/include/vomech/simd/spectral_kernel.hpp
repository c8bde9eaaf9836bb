#pragma once

// Batched evaluation of the output-field spectral integrand.
//
// One call evaluates the 6x6 Hermitian integrand at up to kBatch
// frequencies. Lanes are frequencies: the drift matrix is shared, so the
// closed-form block inverse of (i w + A) runs identically in every lane.
// Transcendental inputs (filter transforms, noise spectrum) are evaluated
// by the caller in scalar code and passed in per node.

#include <array>
#include <complex>
#include <cstddef>
#include <string_view>

namespace vomech::simd {

inline constexpr std::size_t kBatch = 16;
// Upper triangle of a 6x6 Hermitian matrix, real then imaginary part.
inline constexpr std::size_t kUpperEntries = 21;
inline constexpr std::size_t kOutputWidth = 2 * kUpperEntries;

// Index of F(r, c), r <= c, in the upper-triangle ordering.
constexpr std::size_t upper_index(std::size_t r, std::size_t c) {
    return r * 6 - r * (r - 1) / 2 + (c - r);
}

enum class IntegrandKind {
    // T (M + P/2k) D (M + P/2k)^dag T^dag minus its large-|w| limit.
    filtered_output,
    // M D M^dag / 2pi, whose integral is the intracavity covariance.
    wideband,
};

// Shared drift-matrix data, units of omega_m.
struct KernelModel {
    double kappa = 0.0;
    double gamma_m = 0.0;
    double delta = 0.0;
    std::array<double, 2> gx{};  // Re G for TE, TM
    std::array<double, 2> gy{};  // Im G
    IntegrandKind kind = IntegrandKind::filtered_output;
};

// Per-node inputs, structure of arrays. tx/ty are the complex entries of
// the 2x2 filter block [[tx, -ty], [ty, tx]] for TE (0) and TM (1),
// already scaled by sqrt(2 kappa). noise is the mechanical spectrum.
struct NodeBatch {
    std::size_t count = 0;
    alignas(32) double omega[kBatch];
    alignas(32) double noise[kBatch];
    alignas(32) double tx_re[2][kBatch];
    alignas(32) double tx_im[2][kBatch];
    alignas(32) double ty_re[2][kBatch];
    alignas(32) double ty_im[2][kBatch];
};

// out is entry-major: out[e * kBatch + i], e < kOutputWidth.
using KernelFn = void (*)(const KernelModel&, const NodeBatch&, double* out);

enum class Backend { scalar, avx2 };

void spectral_integrand_scalar(const KernelModel& m, const NodeBatch& b, double* out);
#if defined(VOMECH_HAVE_AVX2_KERNEL)
void spectral_integrand_avx2(const KernelModel& m, const NodeBatch& b, double* out);
#endif

// True when this build carries the AVX2 kernel and the CPU runs it.
bool avx2_available();

// Backend used by default: AVX2 when available, unless the environment
// variable VOMECH_SIMD=scalar forces the reference kernel.
Backend active_backend();

KernelFn kernel_for(Backend b);

std::string_view to_string(Backend b);

} // namespace vomech::simd
