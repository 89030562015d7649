#pragma once

#include "svrcsp/instance.hpp"

namespace svrcsp::testing {

// The two-location, two-request toy instance used throughout the tests:
// H=1, I=8, unit travel times, taxi cost twice the truck cost, optimum 2.
Instance example1();

}  // namespace svrcsp::testing
