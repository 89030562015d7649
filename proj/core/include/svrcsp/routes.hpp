#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "svrcsp/timegraph.hpp"

namespace svrcsp {

struct Route {
  int agent = -1;
  std::vector<int> arcs;  // source-to-sink arc ids; empty means unused

  bool empty() const { return arcs.empty(); }
};

struct Plan {
  std::vector<Route> trucks;   // one per truck, in the chosen truck flavor
  std::vector<Route> drivers;  // one per driver, in G_LTX
  std::vector<std::vector<std::uint8_t>> day_off;  // [driver][day]
};

struct CostBreakdown {
  std::int64_t truck_travel = 0;
  std::int64_t taxi_travel = 0;
  std::int64_t delay_penalties = 0;

  std::int64_t total() const { return truck_travel + taxi_travel + delay_penalties; }
};

// True when the arc sequence forms a source-to-sink directed path (or is
// empty).
bool is_directed_path(const TimeExpandedDigraph& g, const std::vector<int>& arcs);

// Forbidden-path categories for a truck route.  Categories that cannot
// occur by construction in the route's flavor are not reported.
std::vector<std::string> check_truck_route(const TimeExpandedDigraph& g, const Route& route);

// Daily-rest and weekly-rest rules for a driver route in G_LTX.
std::vector<std::string> check_driver_route(const TimeExpandedDigraph& ltx, const Route& route,
                                            const Horizon& h);

// Synchronisation (1 <= drivers aboard <= 2 on every used truck arc) plus
// request coverage and day-off flag consistency.
std::vector<std::string> check_sync(const Plan& plan, const GraphBundle& graphs);

// All structural checks at once.
std::vector<std::string> check_plan(const Plan& plan, const GraphBundle& graphs);

CostBreakdown plan_cost(const Plan& plan, const GraphBundle& graphs);

// Splits a conservative integral arc flow on G_LTR into per-truck routes.
// Throws if the flow is not decomposable or cannot be matched to trucks.
std::vector<Route> decompose_flow(const TimeExpandedDigraph& ltr,
                                  const std::vector<std::int64_t>& flow, const Instance& inst);

}  // namespace svrcsp
