#include <doctest.h>

#include <cmath>
#include <vector>

#include "vomech/constants.hpp"
#include "vomech/quadrature.hpp"

using namespace vomech;

namespace {

quad::BatchIntegrand pointwise(double (*f)(double)) {
    return [f](std::span<const double> x, std::span<double> y) {
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = f(x[i]);
    };
}

} // namespace

TEST_CASE("polynomials are exact on one panel") {
    const std::vector<double> bp = {-1.0, 2.0};
    const quad::Result r = quad::integrate(pointwise([](double x) { return x * x * x * x - x; }), 1, bp, {});
    CHECK(r.converged);
    CHECK(r.value[0] == doctest::Approx(33.0 / 5.0 - 1.5).epsilon(1e-14));
}

TEST_CASE("vector integrand is entry-major") {
    quad::BatchIntegrand f = [](std::span<const double> x, std::span<double> y) {
        const std::size_t n = x.size();
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = std::sin(x[i]);
            y[n + i] = std::exp(x[i]);
        }
    };
    const std::vector<double> bp = {0.0, 1.0, constants::pi};
    const quad::Result r = quad::integrate(f, 2, bp, {});
    CHECK(r.converged);
    CHECK(r.value[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.value[1] == doctest::Approx(std::exp(constants::pi) - 1.0).epsilon(1e-12));
    CHECK(r.evaluations == r.panels * quad::kNodesPerPanel);
}

TEST_CASE("real line through the tangent map") {
    const std::vector<double> bp = {0.0};
    const quad::Result r =
        quad::integrate_real_line(pointwise([](double x) { return 1.0 / (1.0 + x * x); }), 1, 1.0, bp, {});
    CHECK(r.converged);
    CHECK(r.value[0] == doctest::Approx(constants::pi).epsilon(1e-12));

    // Sharp Lorentzian far from the origin, located by a breakpoint.
    const std::vector<double> bp2 = {0.0, 50.0};
    const quad::Result l = quad::integrate_real_line(
        pointwise([](double x) { return 1e-3 / ((x - 50.0) * (x - 50.0) + 1e-6); }), 1, 1.0, bp2, {});
    CHECK(l.converged);
    CHECK(l.value[0] == doctest::Approx(constants::pi).epsilon(1e-9));
}

TEST_CASE("panel budget exhaustion is reported") {
    const std::vector<double> bp = {0.0, 1.0};
    const quad::Result r =
        quad::integrate(pointwise([](double x) { return std::sin(1e4 * x); }), 1, bp, {1e-14, 1e-14, 4});
    CHECK_FALSE(r.converged);
    CHECK(r.panels <= 4);
}

TEST_CASE("tolerance is relative to the largest entry") {
    // The second entry integrates to zero and must not block convergence.
    quad::BatchIntegrand f = [](std::span<const double> x, std::span<double> y) {
        const std::size_t n = x.size();
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = 1e4 / (1.0 + x[i] * x[i]);
            y[n + i] = 1e4 * x[i] / (1.0 + x[i] * x[i] * x[i] * x[i]);
        }
    };
    const std::vector<double> bp = {0.0};
    const quad::Result r = quad::integrate_real_line(f, 2, 1.0, bp, {1e-15, 1e-10, 50000});
    CHECK(r.converged);
    CHECK(std::abs(r.value[1]) < 1e-5);
}
