#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace vomech::quad {

// Evaluates a vector-valued integrand at a batch of nodes. values is
// entry-major: values[e * nodes.size() + i] is entry e at nodes[i].
using BatchIntegrand =
    std::function<void(std::span<const double> nodes, std::span<double> values)>;

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    std::size_t max_panels = 50000;
};

struct Result {
    std::vector<double> value;
    std::vector<double> error;   // per-entry Kronrod error estimate
    std::size_t panels = 0;
    std::size_t evaluations = 0;
    bool converged = false;
};

// Globally adaptive Gauss-Kronrod (7, 15) over [breakpoints.front(),
// breakpoints.back()], with the interior breakpoints as initial panel
// edges. Stops when every entry satisfies err_e <= max(abs_tol,
// rel_tol max_k |I_k|) or the panel budget runs out (converged = false).
Result integrate(const BatchIntegrand& f, std::size_t width, std::span<const double> breakpoints,
                 const Options& opts);

// Integral over the whole real line through w = scale tan(phi). The
// integrand must decay at least like 1/w^2. breakpoints are given in w.
Result integrate_real_line(const BatchIntegrand& f, std::size_t width, double scale,
                           std::span<const double> breakpoints, const Options& opts);

// Kronrod nodes on [-1, 1] in the order the integrand sees them.
inline constexpr std::size_t kNodesPerPanel = 15;

} // namespace vomech::quad
