#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vomech/config.hpp"
#include "vomech/output_field.hpp"

namespace vomech {

enum class Target {
    en_te_mech_intracavity,
    en_tm_mech_intracavity,
    en_te_tm_intracavity,
    en_te_mech_output,
    coupling_magnitude_te,
    coupling_magnitude_tm,
    stability_flag,
};

std::string_view to_string(Target t);
Target parse_target(std::string_view name);

// Sweepable names: every config key plus the output-filter settings.
inline constexpr std::string_view kEpsilonKey = "epsilon";
inline constexpr std::string_view kFilterOmegaKey = "omega_over_omega_m";
bool is_sweep_parameter(std::string_view name);

struct Axis {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 0;
    bool log_scale = false;
    bool include_max = true;
    std::vector<double> explicit_values;  // overrides min/max/count when set

    std::vector<double> values() const;
    void validate() const;
};

// "name:min:max[:count]"; count defaults to default_count.
Axis parse_axis(std::string_view text, std::size_t default_count);

struct SweepSpec {
    std::vector<Axis> axes;           // last axis varies fastest; at most three
    std::vector<Target> targets;
    ParameterValues overrides;        // fixed values, any sweepable name
    IntegrationConfig integration;

    void validate() const;
};

// Output filter used by the output target unless overridden: Stokes
// sideband, epsilon = 10, same filter on both polarizations.
inline constexpr double kDefaultEpsilon = 10.0;
inline constexpr double kDefaultFilterOmega = -1.0;

struct PointDiagnostics {
    double q_s = 0.0;
    double delta_over_omega_m = 0.0;
    double g_te_over_omega_m = 0.0;
    double g_tm_over_omega_m = 0.0;
    double nu_minus = 0.0;         // NaN when no entanglement target
    double lyapunov_residual = 0.0;
};

struct Row {
    std::vector<double> axis_values;
    std::vector<std::optional<double>> values;  // one per target; nullopt when unavailable
    bool stable = false;
    std::string error;                          // "", "unstable", "numeric", "parameter"
    PointDiagnostics diagnostics;
};

struct ResultTable {
    std::vector<std::string> axis_names;
    std::vector<Target> targets;
    std::vector<Row> rows;
    ParameterValues base;   // full parameter record including overrides
    IntegrationConfig integration;
};

struct PointResult {
    std::vector<double> values;
    bool stable = false;
    PointDiagnostics diagnostics;
};

// Runs the full pipeline at one parameter point. values must carry every
// config key; epsilon and omega_over_omega_m fall back to the defaults.
// Throws UnstableError / NumericError / ConfigError.
PointResult evaluate_point(const ParameterValues& values, const std::vector<Target>& targets,
                           const IntegrationConfig& cfg);

// Evaluates every grid point. Failures are recorded per row, never
// dropped; row order is fixed with the last axis fastest. threads = 0
// uses the hardware concurrency.
ResultTable run_sweep(const SweepSpec& spec, const ParameterValues& base, unsigned threads = 0);

// Comma separated, header row, 17 significant digits; unstable targets
// print as "unstable".
void write_csv(std::ostream& os, const ResultTable& t);

// JSON document with the parameter record, column list and rows; missing
// values are null.
void write_structured(std::ostream& os, const ResultTable& t);

} // namespace vomech
