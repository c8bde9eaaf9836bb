#include "vomech/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vomech/constants.hpp"
#include "vomech/dynamics.hpp"
#include "vomech/errors.hpp"
#include "vomech/gaussian.hpp"
#include "vomech/lyapunov.hpp"
#include "vomech/output_field.hpp"
#include "vomech/quadrature.hpp"
#include "vomech/random_models.hpp"
#include "vomech/simd/spectral_kernel.hpp"
#include "vomech/steady_state.hpp"

namespace vomech {

namespace {

std::string fmt(const char* f, double v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Eigen::MatrixXd intracavity_cm(const SystemParams& p) {
    const DerivedParams dp = derive_constants(p);
    const SteadyState ss = solve_steady_state(dp, p);
    const LinearModel m = linear_model(ss, dp);
    return solve_lyapunov(drift_matrix(m), diffusion_matrix(m)).v;
}

CheckOutcome complementarity() {
    double worst = 0.0;
    for (int i = 0; i <= 10; ++i) {
        const double theta = constants::pi / 2 * i / 10.0;
        SystemParams a = baseline_params();
        SystemParams b = baseline_params();
        a.theta = theta;
        b.theta = constants::pi / 2 - theta;
        const double te = log_negativity(reduce_bipartite(intracavity_cm(a), Mode::te, Mode::mech));
        const double tm = log_negativity(reduce_bipartite(intracavity_cm(b), Mode::tm, Mode::mech));
        worst = std::max(worst, std::abs(te - tm));
    }
    return {"TE/TM complementarity", worst < 1e-10, fmt("max |E_TE(theta) - E_TM(pi/2 - theta)| = %.3g", worst)};
}

CheckOutcome switch_off() {
    SystemParams p = baseline_params();
    const double tm0 = log_negativity(reduce_bipartite(intracavity_cm(p), Mode::tm, Mode::mech));
    p.theta = constants::pi / 2;
    const double te90 = log_negativity(reduce_bipartite(intracavity_cm(p), Mode::te, Mode::mech));
    return {"exact switch-off", tm0 == 0.0 && te90 == 0.0,
            fmt("E_TM(0) = %g", tm0) + fmt(", E_TE(pi/2) = %g", te90)};
}

CheckOutcome lyapunov_checks(random::Engine& rng) {
    double worst_res = 0.0, worst_kron = 0.0;
    for (int i = 0; i < 200; ++i) {
        const int n = i % 2 ? 6 : 4;
        const Eigen::MatrixXd a = random::stable_matrix(rng, n);
        const Eigen::MatrixXd d = random::diffusion(rng, n);
        const LyapunovSolution s = solve_lyapunov(a, d);
        const Eigen::MatrixXd k = solve_lyapunov_kronecker(a, d);
        worst_res = std::max(worst_res, s.residual);
        worst_kron = std::max(worst_kron, (s.v - k).cwiseAbs().maxCoeff() / std::max(1.0, k.cwiseAbs().maxCoeff()));
    }
    return {"Lyapunov residual and Kronecker agreement", worst_res < kLyapunovResidualTol && worst_kron < 1e-9,
            fmt("max residual %.3g", worst_res) + fmt(", max Kronecker deviation %.3g", worst_kron)};
}

CheckOutcome negativity_forms(random::Engine& rng) {
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const Eigen::Matrix4d v = random::physical_cm(rng, 2);
        BipartiteCM bp{v, Mode::te, Mode::mech};
        worst = std::max(worst, std::abs(min_symplectic_pt(bp) - min_symplectic_pt_spectral(v)));
    }
    return {"closed-form vs spectral nu", worst < 1e-9, fmt("max deviation %.3g", worst)};
}

CheckOutcome routh_vs_eigen(random::Engine& rng) {
    int disagree = 0;
    const int n = 2000;
    for (int i = 0; i < n; ++i) {
        const Eigen::MatrixXd a = random::non_marginal_matrix(rng, 6);
        const bool eig = is_stable_eigen(a).stable;
        const RouthVerdict rh = is_stable_routh_hurwitz(a);
        if ((rh == RouthVerdict::stable) != eig || rh == RouthVerdict::indeterminate) ++disagree;
    }
    return {"Routh-Hurwitz vs eigenvalues", disagree == 0, std::to_string(disagree) + " of " + std::to_string(n) + " disagree"};
}

CheckOutcome parseval(random::Engine& rng) {
    double worst = 0.0;
    IntegrationConfig cfg;
    for (int i = 0; i < 3; ++i) {
        const LinearModel m = random::linear_model(rng);
        const Matrix6 d = diffusion_matrix(m);
        const Matrix6 wide = wideband_covariance(m, d, cfg);
        const Eigen::MatrixXd v = solve_lyapunov(drift_matrix(m), d).v;
        worst = std::max(worst, (wide - v).cwiseAbs().maxCoeff() / v.cwiseAbs().maxCoeff());
    }
    return {"wide-band Parseval vs Lyapunov", worst < 1e-4, fmt("max relative deviation %.3g", worst)};
}

CheckOutcome simd_equivalence(random::Engine& rng) {
    if (!simd::avx2_available()) return {"SIMD vs scalar kernel", true, "AVX2 kernel unavailable, scalar only"};
    double worst = 0.0;
    std::uniform_real_distribution<double> w(-30.0, 30.0);
    for (int i = 0; i < 20; ++i) {
        const LinearModel m = random::linear_model(rng);
        const FilterSpec f = FilterSpec::from_epsilon(1.0 + i, -1.0, 1.0);
        std::vector<double> nodes(37);
        for (double& x : nodes) x = w(rng);
        std::vector<double> a(simd::kOutputWidth * nodes.size()), b(a.size());
        output_integrand_batch(m, f, f, 1.0, nodes, a, simd::Backend::scalar);
        output_integrand_batch(m, f, f, 1.0, nodes, b, simd::Backend::avx2);
        for (std::size_t k = 0; k < a.size(); ++k)
            worst = std::max(worst, std::abs(a[k] - b[k]) / std::max(1.0, std::abs(a[k])));
    }
    return {"SIMD vs scalar kernel", worst < 1e-12, fmt("max relative deviation %.3g", worst)};
}

CheckOutcome filter_normalization() {
    const FilterSpec f = FilterSpec::from_epsilon(10.0, -1.0, 1.0);
    quad::BatchIntegrand g = [&](std::span<const double> nodes, std::span<double> values) {
        for (std::size_t i = 0; i < nodes.size(); ++i) values[i] = std::norm(filter_fourier(f, nodes[i]));
    };
    const std::vector<double> pts = {-1.0};
    const quad::Result r = quad::integrate_real_line(g, 1, 1.0, pts, {1e-12, 1e-10, 200000});
    const double dev = std::abs(r.value[0] - 1.0);
    return {"filter normalization", dev < 1e-6, fmt("|integral |g|^2 - 1| = %.3g", dev)};
}

} // namespace

std::vector<CheckOutcome> run_invariant_suite(unsigned seed) {
    random::Engine rng(seed);
    std::vector<CheckOutcome> out;
    auto guarded = [&](const char* name, auto&& fn) {
        try {
            out.push_back(fn());
        } catch (const std::exception& e) {
            out.push_back({name, false, std::string("threw: ") + e.what()});
        }
    };
    guarded("TE/TM complementarity", complementarity);
    guarded("exact switch-off", switch_off);
    guarded("Lyapunov residual and Kronecker agreement", [&] { return lyapunov_checks(rng); });
    guarded("closed-form vs spectral nu", [&] { return negativity_forms(rng); });
    guarded("Routh-Hurwitz vs eigenvalues", [&] { return routh_vs_eigen(rng); });
    guarded("wide-band Parseval vs Lyapunov", [&] { return parseval(rng); });
    guarded("SIMD vs scalar kernel", [&] { return simd_equivalence(rng); });
    guarded("filter normalization", filter_normalization);
    return out;
}

} // namespace vomech
