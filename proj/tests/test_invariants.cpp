#include <doctest.h>

#include "vomech/invariants.hpp"

TEST_CASE("invariant suite passes") {
    for (const auto& c : vomech::run_invariant_suite()) {
        INFO(c.name << ": " << c.detail);
        CHECK(c.passed);
    }
}
