#include "vomech/params.hpp"

#include <cmath>
#include <string>

#include "vomech/constants.hpp"
#include "vomech/errors.hpp"

namespace vomech {

namespace {

void require_positive(const char* field, double v) {
    if (!std::isfinite(v)) throw ParameterError(field, "must be finite");
    if (!(v > 0.0)) throw ParameterError(field, "must be strictly positive, got " + std::to_string(v));
}

} // namespace

void validate(const SystemParams& p) {
    require_positive("mass_kg", p.mass_kg);
    require_positive("wavelength_m", p.wavelength_m);
    require_positive("omega_m_rad_s", p.omega_m);
    require_positive("g0_rad_s", p.g0);
    require_positive("q_cavity", p.q_cavity);
    require_positive("q_mech", p.q_mech);
    require_positive("power_w", p.power_w);
    if (!std::isfinite(p.temperature_k) || p.temperature_k < 0.0)
        throw ParameterError("temperature_k", "must be finite and >= 0");
    if (!std::isfinite(p.delta_c)) throw ParameterError("delta_c_over_omega_m", "must be finite");
    if (!std::isfinite(p.theta) || p.theta < 0.0 || p.theta >= constants::two_pi)
        throw ParameterError("theta_rad", "must lie in [0, 2pi)");
}

double thermal_occupancy(double omega, double temperature_k) {
    if (temperature_k == 0.0) return 0.0;
    const double x = constants::hbar * omega / (constants::k_boltzmann * temperature_k);
    return 1.0 / std::expm1(x);
}

DerivedParams derive_constants(const SystemParams& p) {
    validate(p);
    DerivedParams d;
    d.omega_m = p.omega_m;
    d.omega_l = constants::two_pi * constants::speed_of_light / p.wavelength_m;
    d.omega_c = d.omega_l + p.delta_c;
    if (!(d.omega_c > 0.0)) throw ParameterError("delta_c_over_omega_m", "cavity frequency must stay positive");
    d.kappa = d.omega_c / p.q_cavity;
    d.gamma_m = p.omega_m / p.q_mech;
    d.drive_amplitude = std::sqrt(p.power_w / (constants::hbar * d.omega_l));
    d.n_m = thermal_occupancy(p.omega_m, p.temperature_k);
    d.temperature_k = p.temperature_k;
    return d;
}

DriveSplit polarization_split(double s, double theta) {
    double c = std::cos(theta);
    double sn = std::sin(theta);
    if (std::abs(c) < 1e-15) c = 0.0;
    if (std::abs(sn) < 1e-15) sn = 0.0;
    return {s * c, s * sn};
}

SystemParams baseline_params() {
    SystemParams p;
    p.mass_kg = 50e-12;
    p.wavelength_m = 810e-9;
    p.omega_m = constants::two_pi * 10e6;
    p.g0 = constants::two_pi * 68.5;
    p.q_cavity = 4.94e7;
    p.q_mech = 1e5;
    p.temperature_k = 0.4;
    p.power_w = 30e-3;
    p.delta_c = p.omega_m;
    p.theta = 0.0;
    return p;
}

} // namespace vomech
