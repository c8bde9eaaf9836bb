#include <doctest.h>

#include <cmath>
#include <string>

#include "vomech/config.hpp"
#include "vomech/constants.hpp"
#include "vomech/errors.hpp"

using namespace vomech;

namespace {

std::string full_config() {
    std::string s = "# baseline\n";
    for (const auto& [k, v] : baseline_values()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        s += k + " = " + buf + "   # trailing comment\n";
    }
    return s;
}

template <class F>
ConfigError config_error(F&& f) {
    try {
        f();
    } catch (const ConfigError& e) {
        return e;
    }
    FAIL("expected ConfigError");
    return ConfigError("", 0, "");
}

} // namespace

TEST_CASE("round trip of the baseline record") {
    const ParameterValues v = parse_config_values(full_config(), false);
    CHECK(v == baseline_values());
    const SystemParams p = parse_config(full_config(), false);
    const SystemParams b = baseline_params();
    CHECK(p.omega_m == b.omega_m);
    CHECK(p.delta_c == b.delta_c);
    CHECK(p.q_cavity == b.q_cavity);
    CHECK(to_values(p) == baseline_values());
}

TEST_CASE("defaults fill absent keys") {
    const SystemParams p = parse_config("theta_rad = 0.7853981633974483\n\n  # nothing else\n", true);
    CHECK(p.theta == doctest::Approx(constants::pi / 4));
    CHECK(p.power_w == baseline_params().power_w);
    CHECK(parse_config("", true).q_cavity == baseline_params().q_cavity);
}

TEST_CASE("detuning is given in units of the mechanical frequency") {
    const SystemParams p = parse_config("delta_c_over_omega_m = 0.5\n", true);
    CHECK(p.delta_c == 0.5 * p.omega_m);
}

TEST_CASE("errors carry key and line") {
    const ConfigError unknown = config_error([] { parse_config_values("q_cavity = 1e7\nfoo = 1\n", true); });
    CHECK(unknown.key() == "foo");
    CHECK(unknown.line() == 2);

    const ConfigError dup = config_error([] { parse_config_values("power_w = 1\n# c\npower_w = 2\n", true); });
    CHECK(dup.key() == "power_w");
    CHECK(dup.line() == 3);

    const ConfigError bad = config_error([] { parse_config_values("q_mech = 1e5x\n", true); });
    CHECK(bad.key() == "q_mech");
    CHECK(bad.line() == 1);

    const ConfigError noeq = config_error([] { parse_config_values("\nq_mech 1e5\n", true); });
    CHECK(noeq.line() == 2);

    const ConfigError missing = config_error([] { parse_config_values("q_mech = 1e5\n", false); });
    CHECK(is_config_key(missing.key()));
    CHECK(missing.line() == 0);
}

TEST_CASE("range errors point at the offending line") {
    const ConfigError e = config_error([] { parse_config("power_w = 0.01\nq_cavity = -1\n", true); });
    CHECK(e.key() == "q_cavity");
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("q_cavity") != std::string::npos);

    ParameterValues v = baseline_values();
    v["temperature_k"] = -0.1;
    CHECK_THROWS_AS(to_system_params(v), ConfigError);
    v = baseline_values();
    v["power_w"] = std::nan("");
    CHECK_THROWS_AS(to_system_params(v), ConfigError);
}

TEST_CASE("key list") {
    for (auto k : kConfigKeys) CHECK(is_config_key(k));
    CHECK_FALSE(is_config_key("epsilon"));
    CHECK(baseline_values().size() == kConfigKeys.size());
}
