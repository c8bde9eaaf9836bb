#pragma once

#include <iosfwd>

#include <Eigen/Dense>

namespace vomech {

struct LyapunovSolution {
    Eigen::MatrixXd v;
    // ||A V + V A^T + D||_max / ||D||_max (absolute when D = 0).
    double residual = 0.0;
};

inline constexpr double kLyapunovResidualTol = 1e-9;

// Solves A V + V A^T = -D for stable A by Bartels-Stewart on the real Schur
// form. Blocks of A and D that do not couple are solved independently, so
// the covariance between decoupled modes is exactly zero.
//
// Throws UnstableError if A is not stable, NumericError if the residual
// exceeds kLyapunovResidualTol or the raw solution is asymmetric.
LyapunovSolution solve_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d);

// Same equation through the n^2 x n^2 Kronecker system. Only meant for
// small n; used as a cross-check.
Eigen::MatrixXd solve_lyapunov_kronecker(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d);

double lyapunov_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d,
                         const Eigen::MatrixXd& v);

// Row-major text dump of A, D, V and the residual with 17 significant
// digits, one labelled section per matrix.
void write_lyapunov_dump(std::ostream& os, const Eigen::MatrixXd& a, const Eigen::MatrixXd& d,
                         const LyapunovSolution& sol);

} // namespace vomech
