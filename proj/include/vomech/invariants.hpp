#pragma once

#include <functional>
#include <string>
#include <vector>

namespace vomech {

struct CheckOutcome {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Fast self-consistency checks used by `vomech validate`: complementarity,
// exact switch-off, Lyapunov residuals, closed-form vs spectral negativity,
// Routh-Hurwitz vs eigenvalues, wide-band Parseval and SIMD equivalence.
std::vector<CheckOutcome> run_invariant_suite(unsigned seed = 20240611);

} // namespace vomech
