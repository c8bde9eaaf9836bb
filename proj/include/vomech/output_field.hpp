#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>

#include <Eigen/Dense>

#include "vomech/dynamics.hpp"
#include "vomech/gaussian.hpp"
#include "vomech/params.hpp"
#include "vomech/simd/spectral_kernel.hpp"
#include "vomech/steady_state.hpp"

namespace vomech {

// Box-car causal filter of duration tau centred at omega (rad/s, negative
// for the Stokes sideband). epsilon = omega_m tau.
struct FilterSpec {
    double omega = 0.0;
    double tau = 0.0;
    double epsilon = 0.0;

    static FilterSpec from_epsilon(double epsilon, double omega_over_omega_m, double omega_m);
    void validate(double omega_m) const;
};

struct IntegrationConfig {
    double cutoff = 100.0;       // window half-width, multiples of omega_m
    double rel_tol = 1e-10;
    double abs_tol = 1e-11;
    std::size_t max_panels = 200000;

    void validate() const;
};

// sqrt(tau / 2pi) exp(i (w - Omega) tau / 2) sinc((w - Omega) tau / 2).
std::complex<double> filter_fourier(const FilterSpec& spec, double omega);

// Symmetrized thermal spectrum (gamma_m w / w_m) coth(hbar w / 2 kB T), rad/s.
double mech_noise_psd(double omega, const DerivedParams& dp, double temperature_k);

using ComplexMatrix6 = Eigen::Matrix<std::complex<double>, 6, 6>;

// (i w + A)^-1 by dense LU.
ComplexMatrix6 transfer_matrix(double omega, const Matrix6& a);

// Integrand of output_cm at w (units of omega_m) with its large-|w| limit
// subtracted, built from dense LU. Reference for the batched kernels.
ComplexMatrix6 output_integrand(const LinearModel& model, const FilterSpec& te,
                                const FilterSpec& tm, double omega_m, double w);

// The same integrand at many frequencies through the batched kernel.
// values is entry-major with simd::kOutputWidth entries per node.
void output_integrand_batch(const LinearModel& model, const FilterSpec& te, const FilterSpec& tm,
                            double omega_m, std::span<const double> omegas,
                            std::span<double> values,
                            simd::Backend backend = simd::active_backend());

struct OutputCM {
    Matrix6 v;              // basis (X_te^out, Y_te^out, X_tm^out, Y_tm^out, q, p)
    double imag_residue = 0.0;   // max |Im|, relative to max(1, max |V|)
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    PhysicalityReport physicality;
};

// Stationary covariance matrix of the filtered output modes together with
// the mechanical mode. Throws NumericError when quadrature does not
// converge, the relative imaginary residue exceeds 1e-9 or the result is unphysical.
OutputCM output_cm(const SteadyState& ss, const DerivedParams& dp, const FilterSpec& te,
                   const FilterSpec& tm, const IntegrationConfig& cfg);

OutputCM output_cm(const LinearModel& model, const FilterSpec& te, const FilterSpec& tm,
                   double omega_m, const IntegrationConfig& cfg,
                   simd::Backend backend = simd::active_backend());

// Integral over the real line of M D M^dag / 2pi with the given diffusion
// diagonal (Markovian, frequency independent). For stable A this equals
// the Lyapunov covariance.
Matrix6 wideband_covariance(const LinearModel& model, const Matrix6& diffusion,
                            const IntegrationConfig& cfg,
                            simd::Backend backend = simd::active_backend());

// Three-term split of V_out: the intracavity term T M D M^dag T^dag, the
// reflected input noise and the cross term between them. Diagnostic only;
// the sum reproduces output_cm.
struct OutputDecomposition {
    Matrix6 intracavity;
    Matrix6 reflection;
    Matrix6 cross;
};

OutputDecomposition output_cm_decomposition(const LinearModel& model, const FilterSpec& te,
                                            const FilterSpec& tm, double omega_m,
                                            const IntegrationConfig& cfg);

// Writes "omega,F00,F01,...,F55" rows (real part of the integrand, omega
// in units of omega_m) for the given frequencies.
void write_integrand_samples(std::ostream& os, const LinearModel& model, const FilterSpec& te,
                             const FilterSpec& tm, double omega_m,
                             std::span<const double> omegas);

} // namespace vomech
