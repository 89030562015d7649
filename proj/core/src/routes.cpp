#include "svrcsp/routes.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <stdexcept>

namespace svrcsp {

bool is_directed_path(const TimeExpandedDigraph& g, const std::vector<int>& arcs) {
  if (arcs.empty()) return true;
  for (int a : arcs) {
    if (a < 0 || a >= g.num_arcs()) return false;
  }
  if (g.arcs[arcs.front()].tail != g.source) return false;
  if (g.arcs[arcs.back()].head != g.sink) return false;
  for (std::size_t k = 0; k + 1 < arcs.size(); ++k) {
    if (g.arcs[arcs[k]].head != g.arcs[arcs[k + 1]].tail) return false;
  }
  return true;
}

std::vector<std::string> check_truck_route(const TimeExpandedDigraph& g, const Route& route) {
  if (!is_directed_path(g, route.arcs)) return {"not a source-sink directed path"};
  std::vector<std::string> v;
  const bool check_unpaired = g.flavor != Flavor::LTR;
  const bool check_disordered = g.flavor != Flavor::LTR;
  const bool check_excess = g.flavor == Flavor::LT;

  std::map<int, int> pickups, deliveries;
  int open_cargo = 0;
  for (int a : route.arcs) {
    const GArc& e = g.arcs[a];
    if (e.kind == ArcKind::Pickup) {
      if (++pickups[e.req] > 1) v.push_back("repeated services: request " + std::to_string(e.req));
      ++open_cargo;
      if (check_excess && open_cargo > 1) v.push_back("excess capacity at instant " +
                                                      std::to_string(g.tail_instant(a)));
    } else if (e.kind == ArcKind::Delivery) {
      if (++deliveries[e.req] > 1)
        v.push_back("repeated services: request " + std::to_string(e.req));
      if (check_disordered && pickups[e.req] == 0)
        v.push_back("disordered services: request " + std::to_string(e.req));
      --open_cargo;
    }
  }
  if (check_unpaired) {
    std::map<int, int> diff;
    for (auto [r, c] : pickups) diff[r] += c;
    for (auto [r, c] : deliveries) diff[r] -= c;
    for (auto [r, d] : diff) {
      if (d != 0) v.push_back("unpaired services: request " + std::to_string(r));
    }
  }
  return v;
}

std::vector<std::string> check_driver_route(const TimeExpandedDigraph& ltx, const Route& route,
                                            const Horizon& h) {
  if (!is_directed_path(ltx, route.arcs)) return {"not a source-sink directed path"};
  std::vector<std::string> v;
  const int I = h.instants_per_day;
  const int total = h.total_instants();

  std::vector<int> rest_at(total + 1, 0);
  for (int a : route.arcs) {
    if (ltx.arcs[a].kind == ArcKind::Rest) rest_at[ltx.tail_instant(a)] = 1;
  }
  std::vector<int> prefix(total + 2, 0);
  for (int i = 0; i <= total; ++i) prefix[i + 1] = prefix[i] + rest_at[i];

  for (int i = 0; i <= I * (h.days - 1); ++i) {
    const int rests = prefix[i + I] - prefix[i];
    if (rests < I / 2) {
      v.push_back("daily rest violated in window starting at instant " + std::to_string(i) +
                  " (" + std::to_string(rests) + " < " + std::to_string(I / 2) + ")");
    }
  }

  auto full_rest_day = [&](int day) { return prefix[(day + 1) * I] - prefix[day * I] == I; };
  for (int j = 0; j + 7 <= h.days; ++j) {
    bool ok = false;
    for (int jp = j; jp <= j + 6 && !ok; ++jp) ok = full_rest_day(jp);
    if (!ok) v.push_back("no day off in days " + std::to_string(j) + ".." + std::to_string(j + 6));
  }
  return v;
}

namespace {

std::vector<std::int64_t> arc_usage(const TimeExpandedDigraph& g, const std::vector<Route>& routes) {
  std::vector<std::int64_t> use(g.num_arcs(), 0);
  for (const Route& r : routes) {
    for (int a : r.arcs) ++use[a];
  }
  return use;
}

}  // namespace

std::vector<std::string> check_sync(const Plan& plan, const GraphBundle& graphs) {
  std::vector<std::string> v;
  const auto truck_use = arc_usage(graphs.truck, plan.trucks);
  const auto driver_use = arc_usage(graphs.ltx, plan.drivers);

  for (int e = 0; e < graphs.ltx.num_arcs(); ++e) {
    const ArcKind k = graphs.ltx.arcs[e].kind;
    if (k != ArcKind::Trip && k != ArcKind::Pickup && k != ArcKind::Delivery) continue;
    std::int64_t trucks_on = 0;
    for (int a : graphs.sync_arcs[e]) trucks_on += truck_use[a];
    const std::int64_t drivers_on = driver_use[e];
    if (drivers_on < trucks_on || drivers_on > 2 * trucks_on) {
      v.push_back("sync violated on ltx arc " + std::to_string(e) + ": trucks " +
                  std::to_string(trucks_on) + ", drivers " + std::to_string(drivers_on));
    }
  }

  for (const Request& r : graphs.inst->requests) {
    std::int64_t p = 0, d = 0;
    for (int a = 0; a < graphs.truck.num_arcs(); ++a) {
      if (graphs.truck.arcs[a].req != r.id) continue;
      if (graphs.truck.arcs[a].kind == ArcKind::Pickup) p += truck_use[a];
      if (graphs.truck.arcs[a].kind == ArcKind::Delivery) d += truck_use[a];
    }
    if (p != 1) v.push_back("request " + std::to_string(r.id) + " picked up " + std::to_string(p) +
                            " times");
    if (d != 1) v.push_back("request " + std::to_string(r.id) + " delivered " + std::to_string(d) +
                            " times");
  }

  const Horizon& h = graphs.inst->horizon;
  const int I = h.instants_per_day;
  for (std::size_t dd = 0; dd < plan.day_off.size(); ++dd) {
    if (dd >= plan.drivers.size()) break;
    std::vector<int> rest_in_day(h.days, 0);
    for (int a : plan.drivers[dd].arcs) {
      if (graphs.ltx.arcs[a].kind == ArcKind::Rest)
        ++rest_in_day[h.day_of(graphs.ltx.tail_instant(a))];
    }
    for (int j = 0; j < h.days && j < static_cast<int>(plan.day_off[dd].size()); ++j) {
      if (plan.day_off[dd][j] && rest_in_day[j] != I) {
        v.push_back("driver " + std::to_string(dd) + " flagged day " + std::to_string(j) +
                    " off but works on it");
      }
    }
  }
  return v;
}

std::vector<std::string> check_plan(const Plan& plan, const GraphBundle& graphs) {
  std::vector<std::string> v;
  const Instance& inst = *graphs.inst;
  if (static_cast<int>(plan.trucks.size()) != inst.num_trucks())
    v.push_back("plan must contain one route per truck");
  if (static_cast<int>(plan.drivers.size()) != inst.num_drivers())
    v.push_back("plan must contain one route per driver");
  if (!v.empty()) return v;

  for (int t = 0; t < inst.num_trucks(); ++t) {
    for (auto& msg : check_truck_route(graphs.truck, plan.trucks[t]))
      v.push_back("truck " + std::to_string(t) + ": " + msg);
    if (!plan.trucks[t].empty()) {
      const int first = plan.trucks[t].arcs.front();
      if (graphs.truck.arcs[first].kind != ArcKind::Source ||
          graphs.truck.head_loc(first) != inst.truck_start[t])
        v.push_back("truck " + std::to_string(t) + ": route does not start at its start location");
    }
  }
  for (int d = 0; d < inst.num_drivers(); ++d) {
    for (auto& msg : check_driver_route(graphs.ltx, plan.drivers[d], inst.horizon))
      v.push_back("driver " + std::to_string(d) + ": " + msg);
    if (!plan.drivers[d].empty()) {
      const int first = plan.drivers[d].arcs.front();
      if (graphs.ltx.arcs[first].kind != ArcKind::Source ||
          graphs.ltx.head_loc(first) != inst.driver_start[d])
        v.push_back("driver " + std::to_string(d) + ": route does not start at its start location");
    }
  }
  for (auto& msg : check_sync(plan, graphs)) v.push_back(msg);
  return v;
}

CostBreakdown plan_cost(const Plan& plan, const GraphBundle& graphs) {
  CostBreakdown c;
  for (const Route& r : plan.trucks) {
    for (int a : r.arcs) {
      const GArc& e = graphs.truck.arcs[a];
      if (e.kind == ArcKind::Trip) c.truck_travel += e.weight;
      if (e.kind == ArcKind::Delivery) c.delay_penalties += e.weight;
    }
  }
  for (const Route& r : plan.drivers) {
    for (int a : r.arcs) {
      const GArc& e = graphs.ltx.arcs[a];
      if (e.kind == ArcKind::Taxi) c.taxi_travel += e.weight;
    }
  }
  return c;
}

std::vector<Route> decompose_flow(const TimeExpandedDigraph& ltr,
                                  const std::vector<std::int64_t>& flow, const Instance& inst) {
  if (static_cast<int>(flow.size()) != ltr.num_arcs())
    throw std::invalid_argument("decompose_flow: flow dimension mismatch");
  for (std::int64_t f : flow) {
    if (f < 0) throw std::invalid_argument("decompose_flow: negative flow");
  }
  for (int u = 0; u < ltr.num_nodes(); ++u) {
    if (u == ltr.source || u == ltr.sink) continue;
    std::int64_t in = 0, out = 0;
    for (int a : ltr.in_arcs[u]) in += flow[a];
    for (int a : ltr.out_arcs[u]) out += flow[a];
    if (in != out)
      throw std::invalid_argument("decompose_flow: conservation violated at node " +
                                  std::to_string(u));
  }

  std::vector<std::int64_t> rem = flow;
  std::int64_t paths_needed = 0;
  for (int a : ltr.out_arcs[ltr.source]) paths_needed += rem[a];

  std::vector<std::vector<int>> paths;
  for (std::int64_t p = 0; p < paths_needed; ++p) {
    // Distance to sink within the remaining support, for shortest-path
    // extraction with smallest-arc-id tie-breaking.
    constexpr int kInf = std::numeric_limits<int>::max();
    std::vector<int> dist(ltr.num_nodes(), kInf);
    dist[ltr.sink] = 0;
    std::deque<int> q{ltr.sink};
    while (!q.empty()) {
      const int u = q.front();
      q.pop_front();
      for (int a : ltr.in_arcs[u]) {
        if (rem[a] > 0 && dist[ltr.arcs[a].tail] == kInf) {
          dist[ltr.arcs[a].tail] = dist[u] + 1;
          q.push_back(ltr.arcs[a].tail);
        }
      }
    }
    if (dist[ltr.source] == kInf)
      throw std::invalid_argument("decompose_flow: source flow not routable to sink");
    std::vector<int> path;
    int cur = ltr.source;
    while (cur != ltr.sink) {
      int chosen = -1;
      for (int a : ltr.out_arcs[cur]) {
        if (rem[a] > 0 && dist[ltr.arcs[a].head] == dist[cur] - 1) {
          chosen = a;
          break;  // out_arcs are in increasing arc-id order
        }
      }
      if (chosen < 0) throw std::invalid_argument("decompose_flow: dead end during extraction");
      --rem[chosen];
      path.push_back(chosen);
      cur = ltr.arcs[chosen].head;
    }
    paths.push_back(std::move(path));
  }
  for (int a = 0; a < ltr.num_arcs(); ++a) {
    if (rem[a] != 0)
      throw std::invalid_argument("decompose_flow: leftover flow on arc " + std::to_string(a));
  }

  // Match paths to trucks by start location, lowest truck index first.
  std::vector<Route> routes(inst.num_trucks());
  for (int t = 0; t < inst.num_trucks(); ++t) routes[t].agent = t;
  std::vector<bool> used(inst.num_trucks(), false);
  for (auto& path : paths) {
    const int start_loc = ltr.head_loc(path.front());
    int truck = -1;
    for (int t = 0; t < inst.num_trucks(); ++t) {
      if (!used[t] && inst.truck_start[t] == start_loc) {
        truck = t;
        break;
      }
    }
    if (truck < 0)
      throw std::invalid_argument("decompose_flow: no free truck starting at location " +
                                  std::to_string(start_loc));
    used[truck] = true;
    routes[truck].arcs = std::move(path);
  }
  return routes;
}

}  // namespace svrcsp
