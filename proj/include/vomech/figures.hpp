#pragma once

#include <span>
#include <string_view>

#include "vomech/sweep.hpp"

namespace vomech {

std::span<const std::string_view> figure_ids();

// Sweep reproducing one published figure on the baseline parameters.
// Throws ArgumentError listing the valid ids.
SweepSpec figure_spec(std::string_view id);

ResultTable reproduce_figure(std::string_view id, unsigned threads = 0);

} // namespace vomech
