#pragma once

namespace vomech {

// User-facing physical parameters, SI units throughout.
struct SystemParams {
    double mass_kg = 0.0;       // metadata only, absorbed into g0
    double wavelength_m = 0.0;
    double omega_m = 0.0;       // mechanical frequency, rad/s
    double g0 = 0.0;            // single-photon coupling, rad/s
    double q_cavity = 0.0;
    double q_mech = 0.0;
    double temperature_k = 0.0;
    double power_w = 0.0;
    double delta_c = 0.0;       // cavity-drive detuning, rad/s
    double theta = 0.0;         // polarization angle from the TE axis, rad
};

struct DerivedParams {
    double omega_m = 0.0;          // copied through, sets the internal unit
    double omega_l = 0.0;          // drive frequency
    double omega_c = 0.0;          // cavity frequency, omega_l + delta_c
    double kappa = 0.0;            // cavity amplitude decay rate
    double gamma_m = 0.0;          // mechanical damping rate
    double drive_amplitude = 0.0;  // S, s^(-1/2)
    double n_m = 0.0;              // mean thermal phonon number
    double temperature_k = 0.0;    // copied through for the colored noise spectrum
};

struct DriveSplit {
    double te = 0.0;
    double tm = 0.0;
};

// Throws ParameterError naming the first offending field.
void validate(const SystemParams& p);

DerivedParams derive_constants(const SystemParams& p);

// Bose occupation 1/(exp(hbar w / kB T) - 1); exactly 0 at T = 0.
double thermal_occupancy(double omega, double temperature_k);

// Projects the drive amplitude onto the TE (cos) and TM (sin) axes.
// Components below 1e-15 of s are snapped to zero so that theta = pi/2
// (as a double) drives the TM mode only.
DriveSplit polarization_split(double s, double theta);

// m = 50 ng, lambda = 810 nm, w_m/2pi = 10 MHz, g0/2pi = 68.5 Hz,
// Q_c = 4.94e7, Q_m = 1e5, T = 400 mK, P = 30 mW, Delta_c = w_m, theta = 0.
SystemParams baseline_params();

} // namespace vomech
