#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>

#include "vomech/params.hpp"

namespace vomech {

// Flat configuration keys, in canonical order.
inline constexpr std::array<std::string_view, 10> kConfigKeys = {
    "mass_kg",     "wavelength_m", "omega_m_rad_s", "g0_rad_s",    "q_cavity",
    "q_mech",      "temperature_k", "power_w",      "delta_c_over_omega_m", "theta_rad",
};

using ParameterValues = std::map<std::string, double, std::less<>>;

bool is_config_key(std::string_view key);

// Baseline values for every config key.
ParameterValues baseline_values();

// Parses "key = value" lines; '#' starts a comment. Unknown, duplicate or
// malformed keys raise ConfigError with key and line. With use_defaults,
// absent keys take the baseline; otherwise they are errors.
ParameterValues parse_config_values(std::string_view text, bool use_defaults);

// Builds and validates SystemParams; range errors become ConfigError.
SystemParams to_system_params(const ParameterValues& values);

SystemParams parse_config(std::string_view text, bool use_defaults);

ParameterValues to_values(const SystemParams& p);

} // namespace vomech
