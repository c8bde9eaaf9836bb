#include "vomech/figures.hpp"

#include <array>
#include <string>

#include "vomech/constants.hpp"
#include "vomech/errors.hpp"

namespace vomech {

namespace {

constexpr std::array<std::string_view, 10> kIds = {"fig2a", "fig2b", "fig2c", "fig2d", "fig3a",
                                                    "fig3b", "fig4a", "fig4b", "fig4c", "fig4d"};

Axis linear(std::string name, double lo, double hi, std::size_t n, bool include_max = true) {
    Axis a;
    a.name = std::move(name);
    a.min = lo;
    a.max = hi;
    a.count = n;
    a.include_max = include_max;
    return a;
}

Axis listed(std::string name, std::vector<double> values) {
    Axis a;
    a.name = std::move(name);
    a.explicit_values = std::move(values);
    return a;
}

Axis log_axis(std::string name, double lo, double hi, std::size_t n) {
    Axis a = linear(std::move(name), lo, hi, n);
    a.log_scale = true;
    return a;
}

const std::vector<double> kEpsilonGrid = {1.0, 2.0, 5.0, 10.0, 20.0};

// Output-field panels are two orders of magnitude dearer per point than the
// intracavity ones, hence their coarser grids.
SweepSpec build(std::string_view id) {
    using constants::pi;
    const Axis detuning = linear("delta_c_over_omega_m", 0.0, 2.0, 101);
    const Axis theta_half_turn = linear("theta_rad", 0.0, pi, 101);
    const Axis theta_full_turn = linear("theta_rad", 0.0, 2.0 * pi, 201, false);
    const std::vector<Target> both_modes = {Target::en_te_mech_intracavity, Target::en_tm_mech_intracavity};

    SweepSpec s;
    if (id == "fig2a") {
        s.axes = {listed("theta_rad", {0.0, pi / 6, pi / 4, pi / 3, pi / 2}),
                  linear("delta_c_over_omega_m", 0.0, 2.0, 201)};
        s.targets = both_modes;
    } else if (id == "fig2b") {
        s.axes = {theta_full_turn};
        s.targets = both_modes;
        s.overrides["delta_c_over_omega_m"] = 1.0;
    } else if (id == "fig2c") {
        s.axes = {detuning, theta_half_turn};
        s.targets = both_modes;
    } else if (id == "fig2d") {
        s.axes = {detuning, theta_half_turn};
        s.targets = {Target::coupling_magnitude_te};
    } else if (id == "fig3a") {
        s.axes = {listed(std::string(kEpsilonKey), kEpsilonGrid), linear("theta_rad", 0.0, 2.0 * pi, 180, false)};
        s.targets = {Target::en_te_mech_output, Target::en_te_mech_intracavity};
        s.overrides[std::string(kFilterOmegaKey)] = -1.0;
    } else if (id == "fig3b") {
        s.axes = {listed(std::string(kEpsilonKey), kEpsilonGrid), linear(std::string(kFilterOmegaKey), -2.0, 2.0, 41),
                  linear("theta_rad", 0.0, pi, 37)};
        s.targets = {Target::en_te_mech_output};
    } else if (id == "fig4a") {
        s.axes = {linear("temperature_k", 0.0, 10.0, 51), linear("theta_rad", 0.0, pi, 73)};
        s.targets = {Target::en_te_mech_output};
        s.overrides[std::string(kFilterOmegaKey)] = -1.0;
        s.overrides[std::string(kEpsilonKey)] = 10.0;
    } else if (id == "fig4b") {
        s.axes = {linear(std::string(kFilterOmegaKey), -2.0, 2.0, 81), linear("temperature_k", 0.0, 10.0, 51)};
        s.targets = {Target::en_te_mech_output};
        s.overrides["theta_rad"] = 0.0;
        s.overrides[std::string(kEpsilonKey)] = 10.0;
    } else if (id == "fig4c") {
        s.axes = {theta_half_turn, log_axis("q_cavity", 1e6, 1e9, 101)};
        s.targets = {Target::en_te_mech_intracavity};
        s.overrides["delta_c_over_omega_m"] = 0.6;
    } else if (id == "fig4d") {
        s.axes = {detuning, log_axis("q_cavity", 1e6, 1e9, 101)};
        s.targets = {Target::en_te_mech_intracavity};
        s.overrides["theta_rad"] = 0.0;
    } else {
        std::string valid;
        for (std::string_view v : kIds) valid += (valid.empty() ? "" : ", ") + std::string(v);
        throw ArgumentError("unknown figure id '" + std::string(id) + "' (valid: " + valid + ")");
    }
    return s;
}

} // namespace

std::span<const std::string_view> figure_ids() {
    return kIds;
}

SweepSpec figure_spec(std::string_view id) {
    return build(id);
}

ResultTable reproduce_figure(std::string_view id, unsigned threads) {
    return run_sweep(figure_spec(id), baseline_values(), threads);
}

} // namespace vomech
