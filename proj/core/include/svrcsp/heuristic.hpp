#pragma once

#include <optional>

#include "svrcsp/routes.hpp"
#include "svrcsp/timegraph.hpp"

namespace svrcsp {

// Sequential-insertion warm start: requests in earliest-delivery-day order,
// each served by the truck that can complete it first, with a dedicated
// driver mirroring the truck.  Returns nullopt when insertion fails.
std::optional<Plan> greedy_warm_start(const Instance& inst, const GraphBundle& graphs);

}  // namespace svrcsp
