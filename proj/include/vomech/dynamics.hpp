#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "vomech/params.hpp"
#include "vomech/steady_state.hpp"

namespace vomech {

using Matrix6 = Eigen::Matrix<double, 6, 6>;

// Basis order of every 6x6 matrix in the library.
enum Quadrature : int { x_te = 0, y_te = 1, x_tm = 2, y_tm = 3, q_mech = 4, p_mech = 5 };

// Linearized model with every rate expressed in units of omega_m.
struct LinearModel {
    double kappa = 0.0;
    double gamma_m = 0.0;
    double delta = 0.0;
    std::complex<double> g_te;
    std::complex<double> g_tm;
    double n_m = 0.0;
    // hbar omega_m / (2 kB T); +inf at T = 0.
    double thermal_ratio = 0.0;
};

LinearModel linear_model(const SteadyState& ss, const DerivedParams& dp);

// Drift and diffusion matrices in units of omega_m.
Matrix6 drift_matrix(const LinearModel& m);
Matrix6 drift_matrix(const SteadyState& ss, const DerivedParams& dp);
Matrix6 diffusion_matrix(const LinearModel& m);
Matrix6 diffusion_matrix(const DerivedParams& dp);

// Permutation exchanging the TE and TM quadrature pairs.
Matrix6 te_tm_swap();

// A point counts as stable only when max Re(lambda) < -kStabilityMargin,
// in the units A is expressed in.
inline constexpr double kStabilityMargin = 1e-10;

struct StabilityReport {
    bool stable = false;
    double max_real_part = 0.0;
};

StabilityReport is_stable_eigen(const Eigen::MatrixXd& a);

enum class RouthVerdict { stable, unstable, indeterminate };

// Monic characteristic polynomial det(sI - A), coefficients by descending
// power (c[0] = 1). Computed from the Hessenberg form, not the spectrum.
std::vector<double> characteristic_polynomial(const Eigen::MatrixXd& a);

// Routh array test on a polynomial with descending coefficients. A pivot
// that vanishes to rounding yields indeterminate.
RouthVerdict routh_hurwitz(std::span<const double> coeffs);

RouthVerdict is_stable_routh_hurwitz(const Eigen::MatrixXd& a);

const char* to_string(RouthVerdict v);

} // namespace vomech
