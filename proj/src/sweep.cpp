#include "vomech/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "vomech/dynamics.hpp"
#include "vomech/errors.hpp"
#include "vomech/gaussian.hpp"
#include "vomech/lyapunov.hpp"
#include "vomech/steady_state.hpp"

namespace vomech {

namespace {

constexpr std::array<std::pair<Target, std::string_view>, 7> kTargetNames = {{
    {Target::en_te_mech_intracavity, "EN_TE_mech_intracavity"},
    {Target::en_tm_mech_intracavity, "EN_TM_mech_intracavity"},
    {Target::en_te_tm_intracavity, "EN_TE_TM_intracavity"},
    {Target::en_te_mech_output, "EN_TE_mech_output"},
    {Target::coupling_magnitude_te, "coupling_magnitude_TE"},
    {Target::coupling_magnitude_tm, "coupling_magnitude_TM"},
    {Target::stability_flag, "stability_flag"},
}};

bool iequal(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

double parse_number(std::string_view s, const std::string& what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        throw ArgumentError(what + ": malformed number '" + std::string(s) + "'");
    return v;
}

double value_or(const ParameterValues& v, std::string_view key, double fallback) {
    const auto it = v.find(key);
    return it == v.end() ? fallback : it->second;
}

bool is_intracavity(Target t) {
    return t == Target::en_te_mech_intracavity || t == Target::en_tm_mech_intracavity ||
           t == Target::en_te_tm_intracavity;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string_view to_string(Target t) {
    for (const auto& [tt, name] : kTargetNames)
        if (tt == t) return name;
    return "?";
}

Target parse_target(std::string_view name) {
    for (const auto& [t, n] : kTargetNames)
        if (iequal(n, name)) return t;
    std::string valid;
    for (const auto& [t, n] : kTargetNames) valid += (valid.empty() ? "" : ", ") + std::string(n);
    throw ArgumentError("unknown target '" + std::string(name) + "' (valid: " + valid + ")");
}

bool is_sweep_parameter(std::string_view name) {
    return is_config_key(name) || name == kEpsilonKey || name == kFilterOmegaKey;
}

std::vector<double> Axis::values() const {
    if (!explicit_values.empty()) return explicit_values;
    std::vector<double> out(count);
    const double steps = static_cast<double>(include_max ? count - 1 : count);
    // Decades stay exact on log axes: 1e6..1e9 in 7 points hits 1e7 exactly.
    const double lo = log_scale ? std::log10(min) : min;
    const double hi = log_scale ? std::log10(max) : max;
    for (std::size_t i = 0; i < count; ++i) {
        const double x = lo + static_cast<double>(i) * (hi - lo) / steps;
        out[i] = log_scale ? std::pow(10.0, x) : x;
    }
    if (include_max && count > 0) out.back() = max;
    return out;
}

void Axis::validate() const {
    if (!is_sweep_parameter(name)) throw ArgumentError("axis: '" + name + "' is not a sweepable parameter");
    if (!explicit_values.empty()) return;
    if (count < 2) throw ArgumentError("axis " + name + ": count must be at least 2");
    if (!(min < max)) throw ArgumentError("axis " + name + ": min must be below max");
    if (log_scale && !(min > 0.0)) throw ArgumentError("axis " + name + ": log axis needs min > 0");
}

Axis parse_axis(std::string_view text, std::size_t default_count) {
    std::vector<std::string_view> parts;
    while (true) {
        const auto c = text.find(':');
        parts.push_back(text.substr(0, c));
        if (c == std::string_view::npos) break;
        text.remove_prefix(c + 1);
    }
    if (parts.size() < 3 || parts.size() > 5)
        throw ArgumentError("axis must look like name:min:max[:count[:log]]");
    Axis a;
    a.name = std::string(parts[0]);
    a.min = parse_number(parts[1], "axis " + a.name + " min");
    a.max = parse_number(parts[2], "axis " + a.name + " max");
    a.count = default_count;
    if (parts.size() >= 4) {
        const double c = parse_number(parts[3], "axis " + a.name + " count");
        if (c < 0 || c != std::floor(c)) throw ArgumentError("axis " + a.name + ": count must be an integer");
        a.count = static_cast<std::size_t>(c);
    }
    if (parts.size() == 5) {
        if (parts[4] != "log") throw ArgumentError("axis " + a.name + ": unknown scale '" + std::string(parts[4]) + "'");
        a.log_scale = true;
    }
    a.validate();
    return a;
}

void SweepSpec::validate() const {
    if (axes.empty() || axes.size() > 3) throw ArgumentError("sweep needs one to three axes");
    for (const Axis& a : axes) a.validate();
    for (std::size_t i = 0; i < axes.size(); ++i)
        for (std::size_t j = i + 1; j < axes.size(); ++j)
            if (axes[i].name == axes[j].name) throw ArgumentError("sweep axes must differ");
    if (targets.empty()) throw ArgumentError("sweep needs at least one target");
    for (const auto& [k, v] : overrides)
        if (!is_sweep_parameter(k)) throw ArgumentError("override '" + k + "' is not a sweepable parameter");
    integration.validate();
}

PointResult evaluate_point(const ParameterValues& values, const std::vector<Target>& targets,
                           const IntegrationConfig& cfg) {
    const SystemParams p = to_system_params(values);
    const DerivedParams dp = derive_constants(p);
    const SteadyState ss = solve_steady_state(dp, p);

    PointResult r;
    r.stable = true;
    const double wm = dp.omega_m;
    r.diagnostics.q_s = ss.q_s;
    r.diagnostics.delta_over_omega_m = ss.delta / wm;
    r.diagnostics.g_te_over_omega_m = std::abs(ss.coupling_te) / wm;
    r.diagnostics.g_tm_over_omega_m = std::abs(ss.coupling_tm) / wm;
    r.diagnostics.nu_minus = std::numeric_limits<double>::quiet_NaN();

    const LinearModel model = linear_model(ss, dp);
    const bool need_intracavity = std::any_of(targets.begin(), targets.end(), is_intracavity);
    LyapunovSolution lyap;
    if (need_intracavity) {
        lyap = solve_lyapunov(drift_matrix(model), diffusion_matrix(model));
        r.diagnostics.lyapunov_residual = lyap.residual;
    }

    bool nu_set = false;
    auto negativity = [&](const Eigen::MatrixXd& v, Mode a, Mode b) {
        const BipartiteCM bp = reduce_bipartite(v, a, b);
        if (!nu_set) {
            r.diagnostics.nu_minus = min_symplectic_pt(bp);
            nu_set = true;
        }
        return log_negativity(bp);
    };

    for (Target t : targets) {
        switch (t) {
        case Target::en_te_mech_intracavity: r.values.push_back(negativity(lyap.v, Mode::te, Mode::mech)); break;
        case Target::en_tm_mech_intracavity: r.values.push_back(negativity(lyap.v, Mode::tm, Mode::mech)); break;
        case Target::en_te_tm_intracavity: r.values.push_back(negativity(lyap.v, Mode::te, Mode::tm)); break;
        case Target::en_te_mech_output: {
            const double eps = value_or(values, kEpsilonKey, kDefaultEpsilon);
            const double om = value_or(values, kFilterOmegaKey, kDefaultFilterOmega);
            const FilterSpec f = FilterSpec::from_epsilon(eps, om, wm);
            const OutputCM out = output_cm(model, f, f, wm, cfg);
            r.values.push_back(negativity(out.v, Mode::te, Mode::mech));
            break;
        }
        case Target::coupling_magnitude_te: r.values.push_back(r.diagnostics.g_te_over_omega_m); break;
        case Target::coupling_magnitude_tm: r.values.push_back(r.diagnostics.g_tm_over_omega_m); break;
        case Target::stability_flag: r.values.push_back(1.0); break;
        }
    }
    return r;
}

ResultTable run_sweep(const SweepSpec& spec, const ParameterValues& base, unsigned threads) {
    spec.validate();
    ResultTable table;
    for (const Axis& a : spec.axes) table.axis_names.push_back(a.name);
    table.targets = spec.targets;
    table.integration = spec.integration;
    table.base = base;
    for (const auto& [k, v] : spec.overrides) table.base[k] = v;
    if (std::find(spec.targets.begin(), spec.targets.end(), Target::en_te_mech_output) != spec.targets.end()) {
        table.base.try_emplace(std::string(kEpsilonKey), kDefaultEpsilon);
        table.base.try_emplace(std::string(kFilterOmegaKey), kDefaultFilterOmega);
    }

    std::vector<std::vector<double>> grids;
    for (const Axis& a : spec.axes) grids.push_back(a.values());
    std::size_t total = 1;
    for (const auto& g : grids) total *= g.size();

    table.rows.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rem = i;
        std::vector<double> coords(grids.size());
        for (std::size_t k = grids.size(); k-- > 0;) {
            coords[k] = grids[k][rem % grids[k].size()];
            rem /= grids[k].size();
        }
        table.rows[i].axis_values = std::move(coords);
    }

    const std::size_t nt = spec.targets.size();
    auto work = [&](std::size_t i) {
        Row& row = table.rows[i];
        ParameterValues point = table.base;
        for (std::size_t k = 0; k < grids.size(); ++k) point[table.axis_names[k]] = row.axis_values[k];
        row.values.assign(nt, std::nullopt);
        row.diagnostics.nu_minus = std::numeric_limits<double>::quiet_NaN();
        try {
            PointResult pr = evaluate_point(point, spec.targets, spec.integration);
            for (std::size_t t = 0; t < nt; ++t) row.values[t] = pr.values[t];
            row.stable = pr.stable;
            row.diagnostics = pr.diagnostics;
        } catch (const UnstableError&) {
            row.error = "unstable";
            for (std::size_t t = 0; t < nt; ++t)
                if (spec.targets[t] == Target::stability_flag) row.values[t] = 0.0;
        } catch (const NumericError&) {
            row.error = "numeric";
        } catch (const Error&) {
            row.error = "parameter";
        }
    };

    unsigned n = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    n = static_cast<unsigned>(std::min<std::size_t>(n, total));
    if (n <= 1) {
        for (std::size_t i = 0; i < total; ++i) work(i);
        return table;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < total; i = next++) work(i);
        });
    for (auto& th : pool) th.join();
    return table;
}

void write_csv(std::ostream& os, const ResultTable& t) {
    for (const auto& a : t.axis_names) os << a << ',';
    for (Target tg : t.targets) os << to_string(tg) << ',';
    os << "stable,error,q_s,delta_over_omega_m,g_te_over_omega_m,g_tm_over_omega_m,nu_minus,lyapunov_residual\n";
    for (const Row& r : t.rows) {
        for (double v : r.axis_values) os << format_double(v) << ',';
        for (const auto& v : r.values) {
            if (v) os << format_double(*v);
            else os << (r.error == "unstable" ? "unstable" : "nan");
            os << ',';
        }
        os << (r.stable ? 1 : 0) << ',' << r.error << ',';
        const PointDiagnostics& d = r.diagnostics;
        if (r.error.empty()) {
            os << format_double(d.q_s) << ',' << format_double(d.delta_over_omega_m) << ','
               << format_double(d.g_te_over_omega_m) << ',' << format_double(d.g_tm_over_omega_m) << ','
               << format_double(d.nu_minus) << ',' << format_double(d.lyapunov_residual);
        } else {
            os << "nan,nan,nan,nan,nan,nan";
        }
        os << '\n';
    }
}

void write_structured(std::ostream& os, const ResultTable& t) {
    using nlohmann::json;
    json doc;
    doc["parameters"] = json::object();
    for (const auto& [k, v] : t.base) doc["parameters"][k] = v;
    doc["integration"] = {{"cutoff_over_omega_m", t.integration.cutoff},
                          {"rel_tol", t.integration.rel_tol},
                          {"abs_tol", t.integration.abs_tol},
                          {"max_panels", t.integration.max_panels}};
    doc["axes"] = t.axis_names;
    json targets = json::array();
    for (Target tg : t.targets) targets.push_back(std::string(to_string(tg)));
    doc["targets"] = targets;
    json rows = json::array();
    for (const Row& r : t.rows) {
        json row;
        row["axes"] = r.axis_values;
        json vals = json::array();
        for (const auto& v : r.values) vals.push_back(v ? json(*v) : json(nullptr));
        row["values"] = vals;
        row["stable"] = r.stable;
        row["error"] = r.error.empty() ? json(nullptr) : json(r.error);
        if (r.error.empty()) {
            const PointDiagnostics& d = r.diagnostics;
            row["diagnostics"] = {{"q_s", d.q_s},
                                  {"delta_over_omega_m", d.delta_over_omega_m},
                                  {"g_te_over_omega_m", d.g_te_over_omega_m},
                                  {"g_tm_over_omega_m", d.g_tm_over_omega_m},
                                  {"nu_minus", std::isnan(d.nu_minus) ? json(nullptr) : json(d.nu_minus)},
                                  {"lyapunov_residual", d.lyapunov_residual}};
        } else {
            row["diagnostics"] = nullptr;
        }
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    os << doc.dump(1) << '\n';
}

} // namespace vomech
