#include "vomech/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vomech/constants.hpp"
#include "vomech/errors.hpp"

namespace vomech {

LinearModel linear_model(const SteadyState& ss, const DerivedParams& dp) {
    const double wm = dp.omega_m;
    LinearModel m;
    m.kappa = dp.kappa / wm;
    m.gamma_m = dp.gamma_m / wm;
    m.delta = ss.delta / wm;
    m.g_te = ss.coupling_te / wm;
    m.g_tm = ss.coupling_tm / wm;
    m.n_m = dp.n_m;
    m.thermal_ratio = dp.temperature_k == 0.0
                          ? std::numeric_limits<double>::infinity()
                          : constants::hbar * wm / (2.0 * constants::k_boltzmann * dp.temperature_k);
    return m;
}

Matrix6 drift_matrix(const LinearModel& m) {
    Matrix6 a = Matrix6::Zero();
    const std::complex<double> g[2] = {m.g_te, m.g_tm};
    for (int j = 0; j < 2; ++j) {
        const int x = 2 * j;
        const int y = x + 1;
        a(x, x) = -m.kappa;
        a(y, y) = -m.kappa;
        a(x, y) = m.delta;
        a(y, x) = -m.delta;
        a(x, q_mech) = -g[j].imag();
        a(y, q_mech) = g[j].real();
        a(p_mech, x) = g[j].real();
        a(p_mech, y) = g[j].imag();
    }
    a(q_mech, p_mech) = 1.0;
    a(p_mech, q_mech) = -1.0;
    a(p_mech, p_mech) = -m.gamma_m;
    return a;
}

Matrix6 drift_matrix(const SteadyState& ss, const DerivedParams& dp) {
    return drift_matrix(linear_model(ss, dp));
}

Matrix6 diffusion_matrix(const LinearModel& m) {
    Matrix6 d = Matrix6::Zero();
    for (int i = 0; i < 4; ++i) d(i, i) = m.kappa;
    d(p_mech, p_mech) = m.gamma_m * (2.0 * m.n_m + 1.0);
    return d;
}

Matrix6 diffusion_matrix(const DerivedParams& dp) {
    LinearModel m;
    m.kappa = dp.kappa / dp.omega_m;
    m.gamma_m = dp.gamma_m / dp.omega_m;
    m.n_m = dp.n_m;
    return diffusion_matrix(m);
}

Matrix6 te_tm_swap() {
    Matrix6 p = Matrix6::Zero();
    p(0, 2) = p(1, 3) = p(2, 0) = p(3, 1) = p(4, 4) = p(5, 5) = 1.0;
    return p;
}

StabilityReport is_stable_eigen(const Eigen::MatrixXd& a) {
    if (!a.allFinite()) throw NumericError("drift matrix has non-finite entries");
    Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
    if (es.info() != Eigen::Success) throw NumericError("eigenvalue solver did not converge");
    const double max_re = es.eigenvalues().real().maxCoeff();
    return {max_re < -kStabilityMargin, max_re};
}

std::vector<double> characteristic_polynomial(const Eigen::MatrixXd& a) {
    const Eigen::Index n = a.rows();
    if (n == 0) return {1.0};
    Eigen::HessenbergDecomposition<Eigen::MatrixXd> hd(a);
    const Eigen::MatrixXd h = hd.matrixH();

    // p_k(s) = det(sI - H_k) for the leading k x k block, ascending
    // coefficients, via the Hessenberg recurrence
    //   p_k = (s - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}.
    std::vector<std::vector<long double>> p(static_cast<std::size_t>(n + 1));
    p[0] = {1.0L};
    for (Eigen::Index k = 1; k <= n; ++k) {
        std::vector<long double> next(static_cast<std::size_t>(k + 1), 0.0L);
        const auto& prev = p[static_cast<std::size_t>(k - 1)];
        const long double hkk = h(k - 1, k - 1);
        for (std::size_t i = 0; i < prev.size(); ++i) {
            next[i + 1] += prev[i];
            next[i] -= hkk * prev[i];
        }
        long double sub = 1.0L;
        for (Eigen::Index i = k - 1; i >= 1; --i) {
            sub *= h(i, i - 1);
            const long double coef = h(i - 1, k - 1) * sub;
            const auto& pi = p[static_cast<std::size_t>(i - 1)];
            for (std::size_t t = 0; t < pi.size(); ++t) next[t] -= coef * pi[t];
        }
        p[static_cast<std::size_t>(k)] = std::move(next);
    }
    const auto& asc = p[static_cast<std::size_t>(n)];
    std::vector<double> desc(asc.size());
    for (std::size_t i = 0; i < asc.size(); ++i) desc[i] = static_cast<double>(asc[asc.size() - 1 - i]);
    return desc;
}

RouthVerdict routh_hurwitz(std::span<const double> coeffs) {
    if (coeffs.empty() || coeffs[0] == 0.0) throw ArgumentError("routh_hurwitz: leading coefficient must be nonzero");
    const std::size_t n = coeffs.size() - 1;
    const double sign = coeffs[0] > 0 ? 1.0 : -1.0;
    double scale = 0.0;
    for (double c : coeffs) scale = std::max(scale, std::abs(c));
    for (double c : coeffs)
        if (sign * c < -1e-14 * scale) return RouthVerdict::unstable;
    if (n == 0) return RouthVerdict::stable;

    const std::size_t width = n / 2 + 1;
    std::vector<double> upper(width, 0.0), lower(width, 0.0);
    for (std::size_t i = 0; i <= n; ++i) (i % 2 == 0 ? upper : lower)[i / 2] = sign * coeffs[i];

    // First column is upper[0], lower[0], then each new row in turn.
    for (std::size_t row = 1; row <= n; ++row) {
        double row_scale = 0.0;
        for (double v : lower) row_scale = std::max(row_scale, std::abs(v));
        const double pivot = lower[0];
        if (std::abs(pivot) <= 1e-12 * std::max(row_scale, std::abs(upper[0]))) return RouthVerdict::indeterminate;
        if (pivot < 0.0) return RouthVerdict::unstable;
        if (row == n) break;
        std::vector<double> next(width, 0.0);
        for (std::size_t i = 0; i + 1 < width; ++i) {
            const double cancel = std::abs(pivot * upper[i + 1]) + std::abs(upper[0] * lower[i + 1]);
            double v = (pivot * upper[i + 1] - upper[0] * lower[i + 1]) / pivot;
            if (std::abs(v) * std::abs(pivot) <= 1e-13 * cancel) v = 0.0;
            next[i] = v;
        }
        upper = std::move(lower);
        lower = std::move(next);
    }
    return RouthVerdict::stable;
}

RouthVerdict is_stable_routh_hurwitz(const Eigen::MatrixXd& a) {
    if (!a.allFinite()) throw NumericError("drift matrix has non-finite entries");
    // Positive scaling keeps the sign of every eigenvalue's real part and
    // brings the coefficients to order one.
    const double norm = a.cwiseAbs().maxCoeff();
    const Eigen::MatrixXd scaled = norm > 0.0 ? Eigen::MatrixXd(a / norm) : a;
    const std::vector<double> c = characteristic_polynomial(scaled);
    return routh_hurwitz(c);
}

const char* to_string(RouthVerdict v) {
    switch (v) {
    case RouthVerdict::stable: return "stable";
    case RouthVerdict::unstable: return "unstable";
    case RouthVerdict::indeterminate: return "indeterminate";
    }
    return "?";
}

} // namespace vomech
