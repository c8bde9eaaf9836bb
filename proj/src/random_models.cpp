#include "vomech/random_models.hpp"

#include <cmath>
#include <complex>

namespace vomech::random {

namespace {

double uniform(Engine& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Eigen::MatrixXd gaussian(Engine& rng, int n) {
    std::normal_distribution<double> nd;
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = nd(rng);
    return m;
}

double max_real(const Eigen::MatrixXd& a) {
    return Eigen::EigenSolver<Eigen::MatrixXd>(a, false).eigenvalues().real().maxCoeff();
}

} // namespace

Eigen::MatrixXd stable_matrix(Engine& rng, int n) {
    Eigen::MatrixXd m = gaussian(rng, n);
    const double shift = max_real(m) + uniform(rng, 0.05, 1.0);
    m.diagonal().array() -= shift;
    return m;
}

Eigen::MatrixXd non_marginal_matrix(Engine& rng, int n, double gap) {
    while (true) {
        Eigen::MatrixXd m = gaussian(rng, n);
        m.diagonal().array() -= uniform(rng, -1.0, 3.0);
        if (std::abs(max_real(m)) >= gap) return m;
    }
}

Eigen::MatrixXd diffusion(Engine& rng, int n) {
    const Eigen::MatrixXd b = gaussian(rng, n);
    return b * b.transpose();
}

Eigen::MatrixXd physical_cm(Engine& rng, int modes) {
    const int n = 2 * modes;
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(n, n);
    auto apply = [&](const Eigen::MatrixXd& op) { s = op * s; };
    for (int layer = 0; layer < 3; ++layer) {
        for (int k = 0; k < modes; ++k) {
            const double phi = uniform(rng, 0.0, 6.283185307179586);
            const double r = uniform(rng, -1.0, 1.0);
            Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(n, n);
            rot.block<2, 2>(2 * k, 2 * k) << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
            apply(rot);
            Eigen::MatrixXd sq = Eigen::MatrixXd::Identity(n, n);
            sq(2 * k, 2 * k) = std::exp(-r);
            sq(2 * k + 1, 2 * k + 1) = std::exp(r);
            apply(sq);
        }
        for (int k = 0; k < modes; ++k)
            for (int l = k + 1; l < modes; ++l) {
                const double t = uniform(rng, 0.0, 6.283185307179586);
                Eigen::MatrixXd bs = Eigen::MatrixXd::Identity(n, n);
                bs.block<2, 2>(2 * k, 2 * k) *= std::cos(t);
                bs.block<2, 2>(2 * l, 2 * l) *= std::cos(t);
                bs.block<2, 2>(2 * k, 2 * l) = std::sin(t) * Eigen::Matrix2d::Identity();
                bs.block<2, 2>(2 * l, 2 * k) = -std::sin(t) * Eigen::Matrix2d::Identity();
                apply(bs);
                const double r = uniform(rng, -1.0, 1.0);
                Eigen::MatrixXd tms = Eigen::MatrixXd::Identity(n, n);
                const Eigen::Matrix2d z = Eigen::Vector2d(1.0, -1.0).asDiagonal();
                tms.block<2, 2>(2 * k, 2 * k) *= std::cosh(r);
                tms.block<2, 2>(2 * l, 2 * l) *= std::cosh(r);
                tms.block<2, 2>(2 * k, 2 * l) = std::sinh(r) * z;
                tms.block<2, 2>(2 * l, 2 * k) = std::sinh(r) * z;
                apply(tms);
            }
    }
    Eigen::VectorXd nu(n);
    for (int k = 0; k < modes; ++k) nu(2 * k) = nu(2 * k + 1) = 0.5 + uniform(rng, 0.0, 2.0);
    return s * nu.asDiagonal() * s.transpose();
}

LinearModel linear_model(Engine& rng) {
    while (true) {
        LinearModel m;
        m.kappa = uniform(rng, 0.2, 2.0);
        m.gamma_m = uniform(rng, 1e-3, 0.1);
        m.delta = uniform(rng, 0.3, 1.8);
        m.g_te = std::polar(uniform(rng, 0.0, 0.5), uniform(rng, -3.14159, 3.14159));
        m.g_tm = std::polar(uniform(rng, 0.0, 0.5), uniform(rng, -3.14159, 3.14159));
        m.n_m = uniform(rng, 0.01, 100.0);
        m.thermal_ratio = 0.5 * std::log1p(1.0 / m.n_m);
        if (is_stable_eigen(drift_matrix(m)).max_real_part < -1e-3) return m;
    }
}

} // namespace vomech::random
