#pragma once

#include <cstdint>
#include <string>

#include "svrcsp/instance.hpp"

namespace svrcsp {

struct GenSpec {
  std::uint64_t seed = 1;
  int num_locations = 3;
  int num_requests = 4;
  int days = 2;
  int instants_per_day = 10;
  int num_trucks = 2;
  int num_drivers = 2;
  double box_km = 600.0;          // side of the coordinate square
  double speed_kmh = 90.0;        // trucks and taxis
  double hours_per_instant = 3.0; // discretisation step
  double taxi_cost_factor = 2.0;  // taxis pay the return leg
  int max_penalty = 5;
};

// Deterministic per seed (byte-identical instance files).
Instance generate(const GenSpec& spec);

// Named parameter shapes: s1..s5 keep the published experiment sizes,
// "desk" (default) and "tiny" are shrunk for fast local runs.
GenSpec preset(const std::string& name);

}  // namespace svrcsp
