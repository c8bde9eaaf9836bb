#include <doctest.h>

#include <sstream>

#include "support.hpp"
#include "vomech/dynamics.hpp"
#include "vomech/errors.hpp"
#include "vomech/lyapunov.hpp"
#include "vomech/random_models.hpp"

using namespace vomech;

TEST_CASE("scalar and diagonal cases") {
    Eigen::MatrixXd a(1, 1), d(1, 1);
    a << -1.0;
    d << 2.0;
    CHECK(solve_lyapunov(a, d).v(0, 0) == doctest::Approx(1.0).epsilon(1e-15));

    Eigen::MatrixXd a2 = Eigen::Vector3d(-1, -2, -0.5).asDiagonal();
    Eigen::MatrixXd d2 = Eigen::Vector3d(1, 1, 1).asDiagonal();
    const Eigen::MatrixXd v = solve_lyapunov(a2, d2).v;
    CHECK(v(1, 1) == doctest::Approx(0.25));
    CHECK(v(2, 2) == doctest::Approx(1.0));
    CHECK(v(0, 1) == 0.0);
}

TEST_CASE("random pairs against Kronecker and time quadrature") {
    random::Engine rng(21);
    for (int k = 0; k < 200; ++k) {
        const int n = 4 + 2 * (k % 2);
        const Eigen::MatrixXd a = random::stable_matrix(rng, n);
        const Eigen::MatrixXd d = random::diffusion(rng, n);
        const LyapunovSolution s = solve_lyapunov(a, d);
        CHECK(s.residual < kLyapunovResidualTol);
        CHECK((s.v - s.v.transpose()).norm() == 0.0);
        const Eigen::MatrixXd kron = solve_lyapunov_kronecker(a, d);
        CHECK((s.v - kron).cwiseAbs().maxCoeff() <= 1e-9 * kron.cwiseAbs().maxCoeff());
        const Eigen::MatrixXd t = vomech::testing::lyapunov_time_integral(a, d);
        CHECK((s.v - t).cwiseAbs().maxCoeff() <= 1e-6 * t.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("nearly undamped mechanics stays symmetric") {
    auto v = baseline_values();
    v["q_cavity"] = 1e6;
    v["delta_c_over_omega_m"] = 0.6;
    const SystemParams p = to_system_params(v);
    const DerivedParams dp = derive_constants(p);
    const LinearModel m = linear_model(solve_steady_state(dp, p), dp);
    const LyapunovSolution s = solve_lyapunov(drift_matrix(m), diffusion_matrix(m));
    CHECK(s.residual < 1e-12);
    const Eigen::MatrixXd kron = solve_lyapunov_kronecker(drift_matrix(m), diffusion_matrix(m));
    CHECK((s.v - kron).cwiseAbs().maxCoeff() <= 1e-9 * kron.cwiseAbs().maxCoeff());
}

TEST_CASE("decoupled modes stay uncorrelated") {
    LinearModel m;
    m.kappa = 0.75;
    m.gamma_m = 1e-5;
    m.delta = 0.9;
    m.g_te = {0.3, -0.35};
    m.n_m = 833;
    const Eigen::MatrixXd v = solve_lyapunov(drift_matrix(m), diffusion_matrix(m)).v;
    for (int i : {x_tm, y_tm}) {
        for (int j = 0; j < 6; ++j)
            if (j != i) CHECK(std::abs(v(i, j)) < 1e-15);
        CHECK(v(i, i) == doctest::Approx(0.5).epsilon(1e-14));
    }
}

TEST_CASE("unstable drift is rejected") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(2, 2);
    CHECK_THROWS_AS(solve_lyapunov(a, a), UnstableError);
    CHECK_THROWS_AS(solve_lyapunov(-a, Eigen::MatrixXd::Identity(3, 3)), ArgumentError);
}

TEST_CASE("dump has one labelled block per matrix") {
    Eigen::MatrixXd a(1, 1), d(1, 1);
    a << -1.0;
    d << 2.0;
    std::ostringstream os;
    write_lyapunov_dump(os, a, d, solve_lyapunov(a, d));
    const std::string s = os.str();
    CHECK(s.find("A") != std::string::npos);
    CHECK(s.find("D") != std::string::npos);
    CHECK(s.find("V") != std::string::npos);
    CHECK(s.find("residual") != std::string::npos);
}
