#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "svrcsp/routes.hpp"
#include "svrcsp/timegraph.hpp"

namespace svrcsp {

struct OracleBudget {
  long max_routes = 200000;    // stored truck routes per truck
  long max_states = 20000000;  // search steps across all phases
  double time_cap_s = 120.0;
  bool enforce_tiny = true;  // |L|<=3, H*I<=16, |V|<=2, |D|<=2, |R|<=3
  // Prunes truck routes costing more than this (from a heuristic upper
  // bound); negative disables.
  std::int64_t cost_cap = -1;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class OracleStatus { Optimal, Infeasible };

struct OracleResult {
  OracleStatus status = OracleStatus::Infeasible;
  Plan plan;
  std::int64_t value = 0;
};

// All feasible source-to-sink truck routes for a truck starting at
// `start_loc`, in DFS order.  Throws BudgetExceeded instead of truncating.
std::vector<Route> enumerate_truck_routes(const TimeExpandedDigraph& g, int start_loc,
                                          const OracleBudget& budget);

// Exact optimum by exhaustive search over truck-route combinations and
// synchronised driver routes.  Flavor-independent; works on the LT bundle.
OracleResult exhaustive_solve(const Instance& inst, const OracleBudget& budget = {});

}  // namespace svrcsp
