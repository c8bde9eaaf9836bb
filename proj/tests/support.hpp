#pragma once

// Test-only oracles that share no code with the library solvers.

#include <cmath>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <optional>

#include "vomech/config.hpp"
#include "vomech/errors.hpp"
#include "vomech/sweep.hpp"

namespace vomech::testing {

// V = int_0^inf e^{A t} D e^{A^T t} dt by direct time quadrature:
// 10-point Gauss-Legendre on [0, h], then V(2T) = V(T) + P V(T) P^T with
// P = e^{A T}, doubling until the propagator has decayed.
inline Eigen::MatrixXd lyapunov_time_integral(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d) {
    static const double x[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                0.8650633666889845, 0.9739065285171717};
    static const double w[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625370065,
                                0.1494513499504366, 0.0666713443630999};
    const double h = 0.05 / std::max(1.0, a.cwiseAbs().rowwise().sum().maxCoeff());
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(a.rows(), a.cols());
    for (int i = 0; i < 5; ++i)
        for (double sgn : {-1.0, 1.0}) {
            const double t = 0.5 * h * (1.0 + sgn * x[i]);
            const Eigen::MatrixXd e = (a * t).exp();
            v += 0.5 * h * w[i] * e * d * e.transpose();
        }
    Eigen::MatrixXd p = (a * h).exp();
    for (int k = 0; k < 200 && p.cwiseAbs().maxCoeff() > 1e-18; ++k) {
        v += p * v * p.transpose();
        p = p * p;
    }
    return v;
}

inline ParameterValues with(ParameterValues v, std::initializer_list<std::pair<const char*, double>> kv) {
    for (const auto& [k, x] : kv) v[k] = x;
    return v;
}

// Single-target evaluation; returns nullopt when the point is unstable.
inline std::optional<double> target_at(const ParameterValues& v, Target t,
                                       const IntegrationConfig& cfg = {}) {
    try {
        return evaluate_point(v, {t}, cfg).values.at(0);
    } catch (const UnstableError&) {
        return std::nullopt;
    }
}

} // namespace vomech::testing
