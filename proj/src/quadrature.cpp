#include "vomech/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

#include "vomech/constants.hpp"
#include "vomech/errors.hpp"

namespace vomech::quad {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod abscissae kXgk[1], [3], [5] and the centre.
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a = 0.0;
    double b = 0.0;
    std::vector<double> value;
    std::vector<double> error;
};

class Evaluator {
public:
    Evaluator(const BatchIntegrand& f, std::size_t width)
        : f_(f), width_(width), values_(width * kNodesPerPanel) {}

    // Nodes: c - h x_i, c + h x_i for i < 7, then the centre.
    Panel eval(double a, double b) {
        const double c = 0.5 * (a + b);
        const double h = 0.5 * (b - a);
        for (std::size_t i = 0; i < 7; ++i) {
            nodes_[2 * i] = c - h * kXgk[i];
            nodes_[2 * i + 1] = c + h * kXgk[i];
        }
        nodes_[14] = c;
        f_(std::span<const double>(nodes_), std::span<double>(values_));
        evaluations_ += kNodesPerPanel;

        Panel p{a, b, std::vector<double>(width_), std::vector<double>(width_)};
        for (std::size_t e = 0; e < width_; ++e) {
            const double* v = &values_[e * kNodesPerPanel];
            double k = kWgk[7] * v[14];
            double g = kWg[3] * v[14];
            for (std::size_t i = 0; i < 7; ++i) {
                const double pair = v[2 * i] + v[2 * i + 1];
                k += kWgk[i] * pair;
                if (i % 2 == 1) g += kWg[i / 2] * pair;
            }
            p.value[e] = h * k;
            p.error[e] = std::abs(h * (k - g));
        }
        return p;
    }

    std::size_t evaluations() const { return evaluations_; }

private:
    const BatchIntegrand& f_;
    std::size_t width_;
    std::array<double, kNodesPerPanel> nodes_{};
    std::vector<double> values_;
    std::size_t evaluations_ = 0;
};

} // namespace

Result integrate(const BatchIntegrand& f, std::size_t width, std::span<const double> breakpoints,
                 const Options& opts) {
    if (breakpoints.size() < 2) throw ArgumentError("integrate: need at least two breakpoints");
    std::vector<double> edges(breakpoints.begin(), breakpoints.end());
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (edges.size() < 2) throw ArgumentError("integrate: empty interval");

    Evaluator ev(f, width);
    std::vector<Panel> panels;
    std::vector<double> total(width, 0.0), total_err(width, 0.0);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        panels.push_back(ev.eval(edges[i], edges[i + 1]));
        for (std::size_t e = 0; e < width; ++e) {
            total[e] += panels.back().value[e];
            total_err[e] += panels.back().error[e];
        }
    }

    std::vector<double> tol(width);
    // Tolerance relative to the largest entry: entries whose integral
    // cancels to ~0 (imaginary parts of Hermitian integrands) would
    // otherwise demand unattainable absolute accuracy.
    auto refresh_tol = [&] {
        double scale = 0.0;
        for (double v : total) scale = std::max(scale, std::abs(v));
        std::fill(tol.begin(), tol.end(), std::max(opts.abs_tol, opts.rel_tol * scale));
    };
    auto score = [&](const Panel& p) {
        double s = 0.0;
        for (std::size_t e = 0; e < width; ++e) s = std::max(s, p.error[e] / tol[e]);
        return s;
    };
    auto done = [&] {
        for (std::size_t e = 0; e < width; ++e)
            if (total_err[e] > tol[e]) return false;
        return true;
    };

    refresh_tol();
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item> heap;
    for (std::size_t i = 0; i < panels.size(); ++i) heap.emplace(score(panels[i]), i);

    bool converged = done();
    std::size_t iter = 0;
    while (!converged && !heap.empty() && panels.size() < opts.max_panels) {
        const std::size_t idx = heap.top().second;
        heap.pop();
        Panel& p = panels[idx];
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b)) continue;  // cannot split further

        Panel left = ev.eval(p.a, mid);
        Panel right = ev.eval(mid, p.b);
        for (std::size_t e = 0; e < width; ++e) {
            total[e] += left.value[e] + right.value[e] - p.value[e];
            total_err[e] += left.error[e] + right.error[e] - p.error[e];
        }
        p = std::move(left);
        panels.push_back(std::move(right));

        if (++iter % 256 == 0) {
            std::fill(total.begin(), total.end(), 0.0);
            std::fill(total_err.begin(), total_err.end(), 0.0);
            for (const Panel& q : panels)
                for (std::size_t e = 0; e < width; ++e) {
                    total[e] += q.value[e];
                    total_err[e] += q.error[e];
                }
        }
        refresh_tol();
        heap.emplace(score(panels[idx]), idx);
        heap.emplace(score(panels.back()), panels.size() - 1);
        converged = done();
    }

    // Deterministic final sum in panel order.
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    Result r;
    r.value.assign(width, 0.0);
    r.error.assign(width, 0.0);
    for (const Panel& q : panels)
        for (std::size_t e = 0; e < width; ++e) {
            r.value[e] += q.value[e];
            r.error[e] += q.error[e];
        }
    r.panels = panels.size();
    r.evaluations = ev.evaluations();
    double scale = 0.0;
    for (double v : r.value) scale = std::max(scale, std::abs(v));
    const double final_tol = std::max(opts.abs_tol, opts.rel_tol * scale);
    r.converged = true;
    for (std::size_t e = 0; e < width; ++e)
        if (r.error[e] > final_tol) r.converged = false;
    return r;
}

Result integrate_real_line(const BatchIntegrand& f, std::size_t width, double scale,
                           std::span<const double> breakpoints, const Options& opts) {
    if (!(scale > 0.0)) throw ArgumentError("integrate_real_line: scale must be positive");
    std::vector<double> phis = {-0.5 * constants::pi, 0.5 * constants::pi};
    for (double w : breakpoints) phis.push_back(std::atan(w / scale));

    std::vector<double> omegas;
    std::vector<double> jac;
    BatchIntegrand mapped = [&](std::span<const double> nodes, std::span<double> values) {
        omegas.resize(nodes.size());
        jac.resize(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const double c = std::cos(nodes[i]);
            omegas[i] = scale * std::tan(nodes[i]);
            jac[i] = scale / (c * c);
        }
        f(std::span<const double>(omegas), values);
        for (std::size_t e = 0; e < width; ++e)
            for (std::size_t i = 0; i < nodes.size(); ++i) values[e * nodes.size() + i] *= jac[i];
    };
    return integrate(mapped, width, phis, opts);
}

} // namespace vomech::quad
