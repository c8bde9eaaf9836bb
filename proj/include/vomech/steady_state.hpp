#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "vomech/params.hpp"

namespace vomech {

struct SteadyState {
    std::complex<double> alpha_te;     // dimensionless intracavity amplitudes
    std::complex<double> alpha_tm;
    double q_s = 0.0;                  // dimensionless mirror displacement
    double p_s = 0.0;                  // always 0
    double delta = 0.0;                // effective detuning, rad/s
    std::complex<double> coupling_te;  // G = sqrt(2) g0 alpha, rad/s
    std::complex<double> coupling_tm;

    // Every real root of the displacement cubic, ascending, and how many of
    // them give a stable drift matrix. More than one root means bistability.
    std::vector<double> real_roots;
    std::size_t stable_roots = 0;
    // Largest real part of the drift-matrix spectrum at the selected root,
    // in units of omega_m.
    double stability_margin = 0.0;
};

struct Couplings {
    std::complex<double> te;
    std::complex<double> tm;
};

// Real roots of q [(Delta_c - g0 q)^2 + kappa^2] = (g0/w_m) 2 kappa S^2,
// ascending, polished by Newton to machine precision.
std::vector<double> displacement_roots(const DerivedParams& dp, const SystemParams& p);

// Selects the smallest real root whose linearized dynamics is stable.
// Throws UnstableError (carrying all roots) when none is.
SteadyState solve_steady_state(const DerivedParams& dp, const SystemParams& p);

Couplings effective_couplings(const SteadyState& ss, double g0);

} // namespace vomech
