#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"
#include "vomech/constants.hpp"
#include "vomech/dynamics.hpp"
#include "vomech/errors.hpp"
#include "vomech/steady_state.hpp"

using namespace vomech;

namespace {

SteadyState solve(const SystemParams& p) {
    return solve_steady_state(derive_constants(p), p);
}

} // namespace

// Frozen from a 50-digit root of the displacement cubic.
TEST_CASE("baseline steady state") {
    const SystemParams p = baseline_params();
    const SteadyState ss = solve(p);
    CHECK(ss.q_s == doctest::Approx(14568.700059865321).epsilon(1e-12));
    CHECK(p.g0 * ss.q_s / p.omega_m == doctest::Approx(0.099795595410077451).epsilon(1e-12));
    CHECK(ss.delta / p.omega_m == doctest::Approx(0.90020440458992255).epsilon(1e-12));
    CHECK(std::abs(ss.alpha_te) == doctest::Approx(46117.431920995321).epsilon(1e-12));
    CHECK(std::abs(ss.coupling_te) / p.omega_m == doctest::Approx(0.44675629913875294).epsilon(1e-12));
    CHECK(ss.alpha_tm == std::complex<double>(0.0, 0.0));
    CHECK(ss.coupling_tm == std::complex<double>(0.0, 0.0));
    CHECK(ss.p_s == 0.0);
    CHECK(ss.real_roots.size() == 1);
    CHECK(ss.stable_roots == 1);
    CHECK(ss.stability_margin < 0.0);
}

TEST_CASE("equal split at theta = pi/4") {
    SystemParams p = baseline_params();
    p.theta = constants::pi / 4;
    const SteadyState ss = solve(p);
    const double wm = p.omega_m;
    CHECK(ss.coupling_te.real() / wm == doctest::Approx(0.20208558745793479).epsilon(1e-11));
    CHECK(ss.coupling_te.imag() / wm == doctest::Approx(-0.24281064793756233).epsilon(1e-11));
    CHECK(std::abs(ss.coupling_te - ss.coupling_tm) <= 1e-12 * std::abs(ss.coupling_te));
}

TEST_CASE("total intracavity photon number does not depend on theta") {
    const SteadyState ref = solve(baseline_params());
    const double n0 = std::norm(ref.alpha_te);
    for (double th = 0.0; th < constants::two_pi; th += 0.3) {
        SystemParams p = baseline_params();
        p.theta = th;
        const SteadyState ss = solve(p);
        CHECK(std::abs((std::norm(ss.alpha_te) + std::norm(ss.alpha_tm)) / n0 - 1.0) < 1e-12);
        CHECK(ss.q_s == doctest::Approx(ref.q_s).epsilon(1e-13));
    }
}

TEST_CASE("displacement satisfies the self-consistency relation") {
    const SystemParams p = baseline_params();
    const DerivedParams d = derive_constants(p);
    const SteadyState ss = solve_steady_state(d, p);
    const double n = std::norm(ss.alpha_te) + std::norm(ss.alpha_tm);
    CHECK(ss.q_s == doctest::Approx(p.g0 * n / p.omega_m).epsilon(1e-12));
    CHECK(ss.delta == doctest::Approx(p.delta_c - p.g0 * ss.q_s).epsilon(1e-14));
    const Couplings g = effective_couplings(ss, p.g0);
    CHECK(std::abs(g.te - std::sqrt(2.0) * p.g0 * ss.alpha_te) <= 1e-12 * std::abs(g.te));
}

TEST_CASE("multistable regime selects a dynamically stable root") {
    SystemParams p = baseline_params();
    p.delta_c = 0.6 * p.omega_m;
    p.q_cavity = 1e9;
    const DerivedParams d = derive_constants(p);
    const auto roots = displacement_roots(d, p);
    REQUIRE(roots.size() == 3);
    CHECK(std::is_sorted(roots.begin(), roots.end()));
    const SteadyState ss = solve_steady_state(d, p);
    CHECK(ss.real_roots == roots);
    CHECK(ss.stable_roots >= 1);
    CHECK(std::find(roots.begin(), roots.end(), ss.q_s) != roots.end());
    CHECK(is_stable_eigen(drift_matrix(ss, d)).stable);
}

TEST_CASE("unstable point reports its roots") {
    // Delta_c = 0.6 w_m, Q_c = 1.3e8: a single displacement, dynamically unstable.
    SystemParams p = baseline_params();
    p.delta_c = 0.6 * p.omega_m;
    p.q_cavity = 1.3e8;
    const DerivedParams d = derive_constants(p);
    try {
        solve_steady_state(d, p);
        FAIL("expected UnstableError");
    } catch (const UnstableError& e) {
        CHECK(e.roots() == displacement_roots(d, p));
    }
}

TEST_CASE("stable root agrees with the eigenvalue verdict") {
    for (double q : {1e6, 1e7, 4.94e7, 3e8, 1e9}) {
        SystemParams p = baseline_params();
        p.delta_c = 0.6 * p.omega_m;
        p.q_cavity = q;
        const DerivedParams d = derive_constants(p);
        try {
            const SteadyState ss = solve_steady_state(d, p);
            CHECK(is_stable_eigen(drift_matrix(ss, d)).stable);
        } catch (const UnstableError&) {
        }
    }
}
