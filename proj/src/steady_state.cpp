#include "vomech/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "vomech/dynamics.hpp"
#include "vomech/errors.hpp"

namespace vomech {

namespace {

// In u = g0 q / w_m and units of w_m the cubic reads
//   u^3 - 2 dc u^2 + (dc^2 + k^2) u - r = 0.
struct Cubic {
    double dc;
    double k;
    double r;

    double f(double u) const { return u * ((dc - u) * (dc - u) + k * k) - r; }
    double df(double u) const { return (dc - u) * (dc - u) + k * k - 2.0 * u * (dc - u); }
};

double polish(const Cubic& c, double u) {
    for (int it = 0; it < 50; ++it) {
        const double d = c.df(u);
        if (d == 0.0) break;
        const double step = c.f(u) / d;
        u -= step;
        if (std::abs(step) <= 4 * std::numeric_limits<double>::epsilon() * std::abs(u)) break;
    }
    return u;
}

std::vector<double> cubic_real_roots(const Cubic& c) {
    Eigen::Matrix3d companion = Eigen::Matrix3d::Zero();
    companion(0, 0) = 2.0 * c.dc;
    companion(0, 1) = -(c.dc * c.dc + c.k * c.k);
    companion(0, 2) = c.r;
    companion(1, 0) = 1.0;
    companion(2, 1) = 1.0;
    const Eigen::Vector3cd ev = companion.eigenvalues();

    std::vector<double> roots;
    for (const auto& z : ev) {
        if (std::abs(z.imag()) > 1e-7 * (1.0 + std::abs(z.real()))) continue;
        const double u = polish(c, z.real());
        if (std::abs(c.f(u)) > 1e-9 * (1.0 + c.r)) continue;
        roots.push_back(u);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)); }),
                roots.end());
    return roots;
}

SteadyState state_at(double q_s, const DerivedParams& dp, const SystemParams& p) {
    SteadyState ss;
    ss.q_s = q_s;
    ss.p_s = 0.0;
    ss.delta = p.delta_c - p.g0 * q_s;
    const DriveSplit s = polarization_split(dp.drive_amplitude, p.theta);
    const std::complex<double> denom(dp.kappa, ss.delta);
    const double pump = std::sqrt(2.0 * dp.kappa);
    ss.alpha_te = pump * s.te / denom;
    ss.alpha_tm = pump * s.tm / denom;
    const Couplings g = effective_couplings(ss, p.g0);
    ss.coupling_te = g.te;
    ss.coupling_tm = g.tm;
    return ss;
}

} // namespace

std::vector<double> displacement_roots(const DerivedParams& dp, const SystemParams& p) {
    if (dp.drive_amplitude == 0.0) return {0.0};
    const double wm = dp.omega_m;
    Cubic c{p.delta_c / wm, dp.kappa / wm,
            p.g0 * p.g0 * 2.0 * dp.kappa * dp.drive_amplitude * dp.drive_amplitude / (wm * wm * wm * wm)};
    std::vector<double> roots = cubic_real_roots(c);
    for (double& u : roots) u *= wm / p.g0;
    return roots;
}

SteadyState solve_steady_state(const DerivedParams& dp, const SystemParams& p) {
    const std::vector<double> roots = displacement_roots(dp, p);
    if (roots.empty()) throw NumericError("displacement cubic has no real root");

    std::size_t stable = 0;
    SteadyState chosen;
    bool found = false;
    for (double q : roots) {
        SteadyState ss = state_at(q, dp, p);
        const StabilityReport rep = is_stable_eigen(drift_matrix(ss, dp));
        if (!rep.stable) continue;
        ++stable;
        if (!found) {
            chosen = ss;
            chosen.stability_margin = rep.max_real_part;
            found = true;
        }
    }
    if (!found) throw UnstableError("unstable operating point: no real root has a stable drift matrix", roots);

    chosen.real_roots = roots;
    chosen.stable_roots = stable;

    if (chosen.q_s != 0.0) {
        const double implied = p.g0 / p.omega_m *
                                (std::norm(chosen.alpha_te) + std::norm(chosen.alpha_tm));
        const double resid = std::abs(chosen.q_s - implied) / std::abs(chosen.q_s);
        if (resid > 1e-10) throw NumericError("steady-state self-consistency residual too large", resid);
    }
    return chosen;
}

Couplings effective_couplings(const SteadyState& ss, double g0) {
    const double s = std::sqrt(2.0) * g0;
    return {s * ss.alpha_te, s * ss.alpha_tm};
}

} // namespace vomech
