#include "vomech/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "vomech/errors.hpp"

namespace vomech {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct Parsed {
    ParameterValues values;
    std::map<std::string, int, std::less<>> lines;
};

Parsed parse_lines(std::string_view text) {
    Parsed out;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("", line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view raw = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("", line_no, "missing key before '='");
        if (!is_config_key(key)) throw ConfigError(key, line_no, "unknown key");
        if (out.values.count(key)) throw ConfigError(key, line_no, "duplicate key");

        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
        if (raw.empty() || ec != std::errc() || ptr != raw.data() + raw.size() || !std::isfinite(v))
            throw ConfigError(key, line_no, "malformed number '" + std::string(raw) + "'");
        out.values.emplace(key, v);
        out.lines.emplace(key, line_no);
    }
    return out;
}

void fill_defaults(ParameterValues& values, bool use_defaults) {
    const ParameterValues base = baseline_values();
    for (std::string_view k : kConfigKeys) {
        if (values.count(k)) continue;
        if (!use_defaults) throw ConfigError(std::string(k), 0, "missing key (pass --defaults paper to use the baseline)");
        values.emplace(std::string(k), base.at(std::string(k)));
    }
}

} // namespace

bool is_config_key(std::string_view key) {
    return std::find(kConfigKeys.begin(), kConfigKeys.end(), key) != kConfigKeys.end();
}

ParameterValues baseline_values() {
    return to_values(baseline_params());
}

ParameterValues parse_config_values(std::string_view text, bool use_defaults) {
    Parsed p = parse_lines(text);
    fill_defaults(p.values, use_defaults);
    return p.values;
}

namespace {

SystemParams build(const ParameterValues& values) {
    auto get = [&](std::string_view k) {
        const auto it = values.find(k);
        if (it == values.end()) throw ConfigError(std::string(k), 0, "missing key");
        return it->second;
    };
    SystemParams p;
    p.mass_kg = get("mass_kg");
    p.wavelength_m = get("wavelength_m");
    p.omega_m = get("omega_m_rad_s");
    p.g0 = get("g0_rad_s");
    p.q_cavity = get("q_cavity");
    p.q_mech = get("q_mech");
    p.temperature_k = get("temperature_k");
    p.power_w = get("power_w");
    p.delta_c = get("delta_c_over_omega_m") * p.omega_m;
    p.theta = get("theta_rad");
    return p;
}

// ParameterError text without its "field: " prefix.
std::string reason(const ParameterError& e) {
    std::string_view w = e.what();
    const std::string prefix = e.field() + ": ";
    if (w.substr(0, prefix.size()) == prefix) w.remove_prefix(prefix.size());
    return "out of range, " + std::string(w);
}

} // namespace

SystemParams to_system_params(const ParameterValues& values) {
    SystemParams p = build(values);
    try {
        validate(p);
    } catch (const ParameterError& e) {
        throw ConfigError(e.field(), 0, reason(e));
    }
    return p;
}

SystemParams parse_config(std::string_view text, bool use_defaults) {
    Parsed parsed = parse_lines(text);
    fill_defaults(parsed.values, use_defaults);
    SystemParams p = build(parsed.values);
    try {
        validate(p);
    } catch (const ParameterError& e) {
        const auto it = parsed.lines.find(e.field());
        throw ConfigError(e.field(), it == parsed.lines.end() ? 0 : it->second, reason(e));
    }
    return p;
}

ParameterValues to_values(const SystemParams& p) {
    return {
        {"mass_kg", p.mass_kg},
        {"wavelength_m", p.wavelength_m},
        {"omega_m_rad_s", p.omega_m},
        {"g0_rad_s", p.g0},
        {"q_cavity", p.q_cavity},
        {"q_mech", p.q_mech},
        {"temperature_k", p.temperature_k},
        {"power_w", p.power_w},
        {"delta_c_over_omega_m", p.delta_c / p.omega_m},
        {"theta_rad", p.theta},
    };
}

} // namespace vomech
