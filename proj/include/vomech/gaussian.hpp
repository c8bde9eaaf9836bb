#pragma once

#include <string_view>

#include <Eigen/Dense>

namespace vomech {

enum class Mode { te = 0, tm = 1, mech = 2 };

std::string_view to_string(Mode m);

// Two-mode reduction of a 6x6 covariance matrix, [[A, C], [C^T, B]].
struct BipartiteCM {
    Eigen::Matrix4d v;
    Mode first = Mode::te;
    Mode second = Mode::mech;

    Eigen::Matrix2d a() const { return v.topLeftCorner<2, 2>(); }
    Eigen::Matrix2d b() const { return v.bottomRightCorner<2, 2>(); }
    Eigen::Matrix2d c() const { return v.topRightCorner<2, 2>(); }
};

BipartiteCM reduce_bipartite(const Eigen::MatrixXd& v, Mode first, Mode second);

// Smallest symplectic eigenvalue of the partially transposed state,
// closed form in the local invariants det A, det B, det C, det V.
double min_symplectic_pt(const BipartiteCM& bp);

// Same quantity from the spectrum of Omega P V P, P = diag(1, 1, 1, -1).
double min_symplectic_pt_spectral(const Eigen::Matrix4d& v);

// max(0, -ln(2 nu)). Exactly zero for separable states, including every
// state with an identically vanishing cross block.
double log_negativity(const BipartiteCM& bp);

// Block-diagonal symplectic form with [[0, 1], [-1, 0]] per mode.
Eigen::MatrixXd symplectic_form(int modes);

// Symplectic spectrum, ascending, one value per mode.
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& v);

inline constexpr double kPhysicalityTol = 1e-9;

struct PhysicalityReport {
    Eigen::VectorXd symplectic;
    // Smallest eigenvalue of V + (i/2) Omega.
    double margin = 0.0;
    bool physical = false;
};

PhysicalityReport validate_cm(const Eigen::MatrixXd& v);

} // namespace vomech
