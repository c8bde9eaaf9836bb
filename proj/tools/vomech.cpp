#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vomech/config.hpp"
#include "vomech/dynamics.hpp"
#include "vomech/errors.hpp"
#include "vomech/figures.hpp"
#include "vomech/gaussian.hpp"
#include "vomech/invariants.hpp"
#include "vomech/lyapunov.hpp"
#include "vomech/output_field.hpp"
#include "vomech/steady_state.hpp"
#include "vomech/sweep.hpp"

using namespace vomech;
using nlohmann::json;

namespace {

enum Exit { ok = 0, config_error = 2, numeric_error = 3, unstable_error = 4 };

struct Common {
    std::string config_path;
    std::string defaults;
    std::string out_path;
    std::string format = "csv";
    unsigned threads = 0;
    double cutoff = IntegrationConfig{}.cutoff;
    double rel_tol = IntegrationConfig{}.rel_tol;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", 0, "cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ParameterValues load_values(const Common& c) {
    const bool defaults = c.defaults == "paper";
    if (!c.config_path.empty()) {
        const std::string text = read_file(c.config_path);
        ParameterValues v = parse_config_values(text, defaults);
        parse_config(text, defaults);  // range errors with line numbers
        return v;
    }
    if (!defaults) throw ConfigError("", 0, "no parameters: pass --config <path> or --defaults paper");
    return baseline_values();
}

IntegrationConfig integration(const Common& c) {
    IntegrationConfig cfg;
    cfg.cutoff = c.cutoff;
    cfg.rel_tol = c.rel_tol;
    cfg.validate();
    return cfg;
}

// Writes to --out when given, stdout otherwise.
template <class Fn>
void emit(const Common& c, Fn&& fn) {
    if (c.out_path.empty()) {
        fn(std::cout);
        return;
    }
    std::ofstream out(c.out_path);
    if (!out) throw ArgumentError("cannot open output file '" + c.out_path + "'");
    fn(out);
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Key/value records: "quantity,value" rows or one JSON object.
void emit_record(const Common& c, const std::vector<std::pair<std::string, json>>& rec) {
    emit(c, [&](std::ostream& os) {
        if (c.format == "structured") {
            json doc = json::object();
            for (const auto& [k, v] : rec) doc[k] = v;
            os << doc.dump(1) << '\n';
            return;
        }
        os << "quantity,value\n";
        for (const auto& [k, v] : rec) {
            os << k << ',';
            if (v.is_number_float()) os << g17(v.get<double>());
            else if (v.is_string()) os << v.get<std::string>();
            else if (v.is_array()) {
                for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ";" : "") << g17(v[i].get<double>());
            } else os << v.dump();
            os << '\n';
        }
    });
}

struct Pair {
    Mode first;
    Mode second;
};

Pair parse_pair(const std::string& s) {
    if (s == "te-mech") return {Mode::te, Mode::mech};
    if (s == "tm-mech") return {Mode::tm, Mode::mech};
    if (s == "te-tm") return {Mode::te, Mode::tm};
    throw ArgumentError("unknown pair '" + s + "' (valid: te-mech, tm-mech, te-tm)");
}

int cmd_steady(const Common& c) {
    const SystemParams p = to_system_params(load_values(c));
    const DerivedParams dp = derive_constants(p);
    std::vector<double> roots = displacement_roots(dp, p);
    const SteadyState ss = solve_steady_state(dp, p);
    const double wm = dp.omega_m;
    emit_record(c, {
        {"omega_l_rad_s", dp.omega_l},
        {"kappa_rad_s", dp.kappa},
        {"kappa_over_omega_m", dp.kappa / wm},
        {"gamma_m_rad_s", dp.gamma_m},
        {"drive_amplitude", dp.drive_amplitude},
        {"n_m", dp.n_m},
        {"real_roots", json(roots)},
        {"stable_roots", static_cast<double>(ss.stable_roots)},
        {"q_s", ss.q_s},
        {"p_s", ss.p_s},
        {"g0_q_s_over_omega_m", p.g0 * ss.q_s / wm},
        {"delta_over_omega_m", ss.delta / wm},
        {"alpha_te_re", ss.alpha_te.real()},
        {"alpha_te_im", ss.alpha_te.imag()},
        {"alpha_tm_re", ss.alpha_tm.real()},
        {"alpha_tm_im", ss.alpha_tm.imag()},
        {"g_te_over_omega_m", std::abs(ss.coupling_te) / wm},
        {"g_tm_over_omega_m", std::abs(ss.coupling_tm) / wm},
        {"max_real_eigenvalue_over_omega_m", ss.stability_margin},
    });
    return ok;
}

struct EntangleOpts {
    std::string pair = "te-mech";
    std::string where = "intracavity";
    double epsilon = kDefaultEpsilon;
    double omega = kDefaultFilterOmega;
    std::string dump_lyapunov;
    std::string dump_integrand;
    std::size_t samples = 2001;
};

int cmd_entangle(const Common& c, const EntangleOpts& o) {
    const Pair pair = parse_pair(o.pair);
    if (o.where != "intracavity" && o.where != "output")
        throw ArgumentError("--where must be intracavity or output");
    const SystemParams p = to_system_params(load_values(c));
    const DerivedParams dp = derive_constants(p);
    const SteadyState ss = solve_steady_state(dp, p);
    const LinearModel m = linear_model(ss, dp);

    std::vector<std::pair<std::string, json>> rec = {{"pair", o.pair}, {"where", o.where}};
    Eigen::MatrixXd v;
    if (o.where == "intracavity") {
        const Matrix6 a = drift_matrix(m);
        const Matrix6 d = diffusion_matrix(m);
        const LyapunovSolution sol = solve_lyapunov(a, d);
        v = sol.v;
        rec.emplace_back("lyapunov_residual", sol.residual);
        if (!o.dump_lyapunov.empty()) {
            std::ofstream f(o.dump_lyapunov);
            if (!f) throw ArgumentError("cannot open '" + o.dump_lyapunov + "'");
            write_lyapunov_dump(f, a, d, sol);
        }
    } else {
        if (pair.first == Mode::te && pair.second == Mode::tm)
            throw ArgumentError("output entanglement is defined for optical-mechanical pairs only");
        const FilterSpec f = FilterSpec::from_epsilon(o.epsilon, o.omega, dp.omega_m);
        const OutputCM out = output_cm(m, f, f, dp.omega_m, integration(c));
        v = out.v;
        rec.emplace_back("epsilon", o.epsilon);
        rec.emplace_back("omega_over_omega_m", o.omega);
        rec.emplace_back("quadrature_error", out.error_estimate);
        rec.emplace_back("evaluations", static_cast<double>(out.evaluations));
        if (!o.dump_integrand.empty()) {
            std::ofstream fs(o.dump_integrand);
            if (!fs) throw ArgumentError("cannot open '" + o.dump_integrand + "'");
            const IntegrationConfig cfg = integration(c);
            std::vector<double> ws(o.samples);
            for (std::size_t i = 0; i < ws.size(); ++i)
                ws[i] = -cfg.cutoff + 2.0 * cfg.cutoff * static_cast<double>(i) / static_cast<double>(ws.size() - 1);
            write_integrand_samples(fs, m, f, f, dp.omega_m, ws);
        }
    }
    const BipartiteCM bp = reduce_bipartite(v, pair.first, pair.second);
    rec.emplace_back("nu_minus", min_symplectic_pt(bp));
    rec.emplace_back("log_negativity", log_negativity(bp));
    emit_record(c, rec);
    return ok;
}

struct SweepOpts {
    std::string axis1;
    std::string axis2;
    std::vector<std::string> targets;
    std::vector<std::string> sets;
};

void emit_table(const Common& c, const ResultTable& t) {
    emit(c, [&](std::ostream& os) {
        if (c.format == "structured") write_structured(os, t);
        else write_csv(os, t);
    });
}

int cmd_sweep(const Common& c, const SweepOpts& o) {
    SweepSpec spec;
    spec.axes.push_back(parse_axis(o.axis1, 201));
    if (!o.axis2.empty()) {
        spec.axes[0] = parse_axis(o.axis1, 101);
        spec.axes.push_back(parse_axis(o.axis2, 101));
    }
    for (const std::string& list : o.targets) {
        std::stringstream ss(list);
        std::string item;
        while (std::getline(ss, item, ',')) spec.targets.push_back(parse_target(item));
    }
    if (spec.targets.empty()) throw ArgumentError("--target is required");
    for (const std::string& s : o.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ArgumentError("--set expects name=value, got '" + s + "'");
        const std::string key = s.substr(0, eq);
        try {
            std::size_t used = 0;
            const double v = std::stod(s.substr(eq + 1), &used);
            if (used != s.size() - eq - 1) throw std::invalid_argument("trailing");
            spec.overrides[key] = v;
        } catch (const std::logic_error&) {
            throw ArgumentError("--set " + key + ": malformed number");
        }
    }
    spec.integration = integration(c);
    emit_table(c, run_sweep(spec, load_values(c), c.threads));
    return ok;
}

int cmd_figure(const Common& c, const std::string& id) {
    emit_table(c, reproduce_figure(id, c.threads));
    return ok;
}

int cmd_validate(const Common& c) {
    const std::vector<CheckOutcome> results = run_invariant_suite();
    bool all = true;
    emit(c, [&](std::ostream& os) {
        for (const CheckOutcome& r : results) {
            os << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
            all = all && r.passed;
        }
    });
    return all ? ok : numeric_error;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polarization-controlled optomechanical entanglement"};
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    app.add_option("--config", common.config_path, "Parameter file with key = value lines");
    app.add_option("--defaults", common.defaults, "Fill absent keys from the baseline")->check(CLI::IsMember({"paper"}));
    app.add_option("--out", common.out_path, "Write results here instead of stdout");
    app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "structured"}));
    app.add_option("--threads", common.threads, "Worker threads for sweeps (0 = all cores)");
    app.add_option("--cutoff", common.cutoff, "Output-field integration half-width, units of omega_m");
    app.add_option("--rel-tol", common.rel_tol, "Relative quadrature tolerance");

    auto* steady = app.add_subcommand("steady", "Print the steady state");

    EntangleOpts eo;
    auto* entangle = app.add_subcommand("entangle", "Logarithmic negativity at one parameter point");
    entangle->add_option("--pair", eo.pair, "te-mech, tm-mech or te-tm");
    entangle->add_option("--where", eo.where, "intracavity or output");
    entangle->add_option("--epsilon", eo.epsilon, "Filter inverse bandwidth omega_m tau");
    entangle->add_option("--omega", eo.omega, "Filter centre, units of omega_m");
    entangle->add_option("--dump-lyapunov", eo.dump_lyapunov, "Write A, D, V and the residual here");
    entangle->add_option("--dump-integrand", eo.dump_integrand, "Write output integrand samples here");
    entangle->add_option("--samples", eo.samples, "Integrand samples over the cutoff window");

    SweepOpts so;
    auto* sweep = app.add_subcommand("sweep", "Grid sweep over one or two parameters");
    sweep->add_option("--axis1", so.axis1, "name:min:max[:count[:log]]")->required();
    sweep->add_option("--axis2", so.axis2, "Second axis, varies fastest");
    sweep->add_option("--target", so.targets, "Target column(s), comma separated")->required();
    sweep->add_option("--set", so.sets, "Fixed override name=value");

    std::string figure_id;
    auto* figure = app.add_subcommand("figure", "Reproduce a figure dataset");
    figure->add_option("id", figure_id, "Figure id")->required();

    auto* validate = app.add_subcommand("validate", "Run the invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    try {
        if (*steady) return cmd_steady(common);
        if (*entangle) return cmd_entangle(common, eo);
        if (*sweep) return cmd_sweep(common, so);
        if (*figure) return cmd_figure(common, figure_id);
        if (*validate) return cmd_validate(common);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return config_error;
    } catch (const ArgumentError& e) {
        std::cerr << "argument error: " << e.what() << '\n';
        return config_error;
    } catch (const UnstableError& e) {
        std::cerr << "unstable: " << e.what() << '\n';
        return unstable_error;
    } catch (const Error& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return numeric_error;
    }
    return ok;
}
