#include "vomech/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Eigenvalues>

#include "vomech/errors.hpp"

namespace vomech {

std::string_view to_string(Mode m) {
    switch (m) {
    case Mode::te: return "te";
    case Mode::tm: return "tm";
    case Mode::mech: return "mech";
    }
    return "?";
}

BipartiteCM reduce_bipartite(const Eigen::MatrixXd& v, Mode first, Mode second) {
    if (first == second) throw ArgumentError("reduce_bipartite: the two modes must differ");
    if (v.rows() != 6 || v.cols() != 6) throw ArgumentError("reduce_bipartite: expected a 6x6 covariance matrix");
    const int idx[4] = {2 * static_cast<int>(first), 2 * static_cast<int>(first) + 1,
                        2 * static_cast<int>(second), 2 * static_cast<int>(second) + 1};
    BipartiteCM bp;
    bp.first = first;
    bp.second = second;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) bp.v(i, j) = v(idx[i], idx[j]);
    return bp;
}

double min_symplectic_pt(const BipartiteCM& bp) {
    // The invariants are differences of products of entries that can reach
    // 1e3 for strongly squeezed states; extended precision keeps nu_- good
    // to ~1e-13 where double loses up to 1e-9.
    using ld = long double;
    const Eigen::Matrix<ld, 4, 4> v = bp.v.cast<ld>();
    auto det2 = [&](int r, int c) { return v(r, c) * v(r + 1, c + 1) - v(r, c + 1) * v(r + 1, c); };
    const ld det_a = det2(0, 0);
    const ld det_b = det2(2, 2);
    const ld det_c = det2(0, 2);
    const ld det_v = v.determinant();
    const ld sigma = det_a + det_b - 2.0L * det_c;

    ld disc = sigma * sigma - 4.0L * det_v;
    if (disc < 0.0L) {
        if (disc < -1e-12L * std::max(1.0L, sigma * sigma))
            throw NumericError("negative discriminant in partial-transpose spectrum", static_cast<double>(disc));
        disc = 0.0L;
    }
    // nu^2 = (sigma - sqrt(disc)) / 2 = 2 det V / (sigma + sqrt(disc)); the
    // second form avoids cancellation when nu_+ >> nu_-.
    const ld denom = sigma + std::sqrt(disc);
    ld nu2 = denom > 0.0L ? 2.0L * det_v / denom : 0.5L * (sigma - std::sqrt(disc));
    if (nu2 < 0.0L) {
        if (nu2 < -1e-12L * std::max(1.0L, std::abs(sigma)))
            throw NumericError("negative radicand in partial-transpose spectrum", static_cast<double>(nu2));
        nu2 = 0.0L;
    }
    return static_cast<double>(std::sqrt(nu2));
}

Eigen::MatrixXd symplectic_form(int modes) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
    for (int k = 0; k < modes; ++k) {
        w(2 * k, 2 * k + 1) = 1.0;
        w(2 * k + 1, 2 * k) = -1.0;
    }
    return w;
}

Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& v) {
    const Eigen::Index n = v.rows();
    if (n % 2 != 0 || v.cols() != n) throw ArgumentError("symplectic_eigenvalues: expected an even square matrix");
    const Eigen::MatrixXd w = symplectic_form(static_cast<int>(n / 2));
    Eigen::EigenSolver<Eigen::MatrixXd> es(w * v, false);
    if (es.info() != Eigen::Success) throw NumericError("eigenvalue solver did not converge");
    // Spectrum of Omega V is {+-i nu_k}; sort |Im| and keep one of each pair.
    std::vector<double> mags;
    for (const auto& z : es.eigenvalues()) mags.push_back(std::abs(z.imag()));
    std::sort(mags.begin(), mags.end());
    Eigen::VectorXd nu(n / 2);
    for (Eigen::Index k = 0; k < n / 2; ++k) nu(k) = 0.5 * (mags[2 * k] + mags[2 * k + 1]);
    return nu;
}

double min_symplectic_pt_spectral(const Eigen::Matrix4d& v) {
    Eigen::Matrix4d p = Eigen::Matrix4d::Identity();
    p(3, 3) = -1.0;
    return symplectic_eigenvalues(p * v * p)(0);
}

double log_negativity(const BipartiteCM& bp) {
    if ((bp.c().array() == 0.0).all()) return 0.0;
    const double nu = min_symplectic_pt(bp);
    if (nu >= 0.5) return 0.0;
    return -std::log(2.0 * nu);
}

PhysicalityReport validate_cm(const Eigen::MatrixXd& v) {
    PhysicalityReport rep;
    rep.symplectic = symplectic_eigenvalues(v);
    const Eigen::Index n = v.rows();
    const Eigen::MatrixXcd h = v.cast<std::complex<double>>() +
                               std::complex<double>(0.0, 0.5) * symplectic_form(static_cast<int>(n / 2)).cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("eigenvalue solver did not converge");
    rep.margin = es.eigenvalues().minCoeff();
    rep.physical = rep.margin >= -kPhysicalityTol;
    return rep;
}

} // namespace vomech
