#include "svrcsp/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "svrcsp/heuristic.hpp"

namespace svrcsp {

namespace {

constexpr std::int64_t kInfCost = std::numeric_limits<std::int64_t>::max() / 4;

struct Guard {
  long max_states;
  double time_cap_s;
  long steps = 0;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  void tick() {
    if (++steps > max_states) throw BudgetExceeded("oracle: state budget exceeded");
    if ((steps & 0x3ff) == 0) {
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (s > time_cap_s) throw BudgetExceeded("oracle: time budget exceeded");
    }
  }
};

struct TruckCandidate {
  std::vector<int> arcs;
  unsigned served = 0;  // bitmask of picked-up requests
  std::int64_t cost = 0;
};

struct TruckEnum {
  const TimeExpandedDigraph& g;
  std::int64_t cost_cap;
  long max_routes;
  Guard& guard;
  std::vector<TruckCandidate> out;
  std::vector<int> path;

  void dfs(int node, unsigned picked, int loaded, std::int64_t cost) {
    guard.tick();
    if (node == g.sink) {
      if (loaded >= 0) return;  // unpaired
      if (static_cast<long>(out.size()) >= max_routes)
        throw BudgetExceeded("oracle: truck route budget exceeded");
      TruckCandidate c;
      c.arcs = path;
      c.served = picked;
      c.cost = cost;
      out.push_back(std::move(c));
      return;
    }
    for (int a : g.out_arcs[node]) {
      const GArc& arc = g.arcs[a];
      const std::int64_t ncost = cost + arc.weight;
      if (cost_cap >= 0 && ncost > cost_cap) continue;
      unsigned npicked = picked;
      int nloaded = loaded;
      switch (arc.kind) {
        case ArcKind::Pickup:
          if (picked & (1u << arc.req)) continue;  // repeated
          if (loaded >= 0) continue;               // over capacity
          npicked |= 1u << arc.req;
          nloaded = arc.req;
          break;
        case ArcKind::Delivery:
          if (loaded != arc.req) continue;  // disordered / unpaired
          nloaded = -1;
          break;
        default:
          break;
      }
      path.push_back(a);
      dfs(arc.head, npicked, nloaded, ncost);
      path.pop_back();
    }
  }
};

struct DriverCandidate {
  std::vector<int> arcs;
  std::vector<int> aboard;  // demanded (trip/pickup/delivery) arcs used
  std::int64_t cost = 0;    // taxi travel
  std::vector<std::uint8_t> day_off;
};

struct DriverEnum {
  const TimeExpandedDigraph& g;
  const Horizon& h;
  const std::vector<int>& demand;  // per LTX arc
  int start_loc;
  std::int64_t cost_cap;
  Guard& guard;
  std::vector<DriverCandidate> out;
  std::vector<int> path;
  std::vector<char> rest_at;  // rest arc occupying each instant

  bool window_ok(int w) const {
    const int I = h.instants_per_day;
    int rest = 0;
    for (int t = w; t < w + I; ++t) rest += rest_at[t];
    return rest >= I / 2;
  }

  void dfs(int node, std::int64_t cost) {
    guard.tick();
    if (node == g.sink) {
      finish(cost);
      return;
    }
    const int t = g.nodes[node].is_source ? 0 : g.nodes[node].instant;
    for (int a : g.out_arcs[node]) {
      const GArc& arc = g.arcs[a];
      if (arc.kind == ArcKind::Source && g.head_loc(a) != start_loc) continue;
      if ((arc.kind == ArcKind::Trip || arc.kind == ArcKind::Pickup ||
           arc.kind == ArcKind::Delivery) &&
          demand[a] == 0)
        continue;
      const std::int64_t ncost = cost + (arc.kind == ArcKind::Taxi ? arc.weight : 0);
      if (cost_cap >= 0 && ncost > cost_cap) continue;
      if (arc.kind == ArcKind::Rest) rest_at[t] = 1;
      path.push_back(a);
      // Daily windows that became fully determined by this move.
      const int head_t = g.nodes[arc.head].is_sink ? h.total_instants() : g.nodes[arc.head].instant;
      bool ok = true;
      const int I = h.instants_per_day;
      const int last_w = std::min(head_t - I, I * (h.days - 1));
      for (int w = std::max(0, t - I + 1); w <= last_w && ok; ++w) ok = window_ok(w);
      if (ok) dfs(arc.head, ncost);
      path.pop_back();
      if (arc.kind == ArcKind::Rest) rest_at[t] = 0;
    }
  }

  void finish(std::int64_t cost) {
    const int I = h.instants_per_day;
    const int H = h.days;
    std::vector<std::uint8_t> day_off(H, 0);
    for (int j = 0; j < H; ++j) {
      int rest = 0;
      for (int t = I * j; t < I * (j + 1); ++t) rest += rest_at[t];
      day_off[j] = (rest == I) ? 1 : 0;
    }
    if (H >= 7) {
      for (int j = 0; j + 6 <= H - 1; ++j) {
        bool has_off = false;
        for (int j2 = j; j2 <= j + 6 && !has_off; ++j2) has_off = day_off[j2];
        if (!has_off) return;  // weekly rule violated
      }
    }
    DriverCandidate c;
    c.arcs = path;
    c.cost = cost;
    c.day_off = std::move(day_off);
    for (int a : path) {
      const ArcKind k = g.arcs[a].kind;
      if (k == ArcKind::Trip || k == ArcKind::Pickup || k == ArcKind::Delivery)
        c.aboard.push_back(a);
    }
    out.push_back(std::move(c));
  }
};

struct JointDriverSearch {
  const TimeExpandedDigraph& ltx;
  const std::vector<int>& demand;
  const std::vector<std::vector<DriverCandidate>>& cands;
  Guard& guard;
  std::vector<int> aboard;
  std::vector<int> pick;  // chosen candidate per driver
  std::int64_t best = kInfCost;
  std::vector<int> best_pick;

  void dfs(int d, std::int64_t cost) {
    guard.tick();
    if (cost >= best) return;
    if (d == static_cast<int>(cands.size())) {
      for (int a = 0; a < ltx.num_arcs(); ++a) {
        if (demand[a] > 0 && aboard[a] < demand[a]) return;
      }
      best = cost;
      best_pick = pick;
      return;
    }
    for (int c = 0; c < static_cast<int>(cands[d].size()); ++c) {
      const DriverCandidate& cand = cands[d][c];
      bool ok = true;
      for (int a : cand.aboard) {
        if (aboard[a] + 1 > 2 * demand[a]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (int a : cand.aboard) ++aboard[a];
      pick.push_back(c);
      dfs(d + 1, cost + cand.cost);
      pick.pop_back();
      for (int a : cand.aboard) --aboard[a];
    }
  }
};

}  // namespace

std::vector<Route> enumerate_truck_routes(const TimeExpandedDigraph& g, int start_loc,
                                          const OracleBudget& budget) {
  Guard guard{budget.max_states, budget.time_cap_s};
  TruckEnum te{g, budget.cost_cap, budget.max_routes, guard, {}, {}};
  // Restrict the first move to the truck's own source arc.
  for (int a : g.out_arcs[g.source]) {
    if (g.head_loc(a) != start_loc) continue;
    te.path.push_back(a);
    te.dfs(g.arcs[a].head, 0, -1, g.arcs[a].weight);
    te.path.pop_back();
  }
  std::vector<Route> routes;
  routes.reserve(te.out.size());
  for (TruckCandidate& c : te.out) {
    Route r;
    r.arcs = std::move(c.arcs);
    routes.push_back(std::move(r));
  }
  return routes;
}

OracleResult exhaustive_solve(const Instance& inst, const OracleBudget& budget) {
  if (budget.enforce_tiny) {
    if (inst.num_locations > 3 || inst.horizon.total_instants() > 16 || inst.num_trucks() > 2 ||
        inst.num_drivers() > 2 || inst.num_requests() > 3)
      throw BudgetExceeded("oracle: instance is not tiny; relax enforce_tiny to override");
  }
  Guard guard{budget.max_states, budget.time_cap_s};
  const GraphBundle graphs = build_bundle(inst, Flavor::LT);
  const TimeExpandedDigraph& tg = graphs.truck;
  const TimeExpandedDigraph& xg = graphs.ltx;

  std::int64_t best = kInfCost;
  Plan best_plan;
  bool have_plan = false;
  if (auto ws = greedy_warm_start(inst, graphs)) {
    best = plan_cost(*ws, graphs).total();
    best_plan = std::move(*ws);
    have_plan = true;
  }
  const std::int64_t cap = budget.cost_cap >= 0
                               ? budget.cost_cap
                               : (best < kInfCost ? best : -1);

  // Per-truck feasible routes (the empty route first).
  const auto& tstarts = inst.truck_start;
  std::vector<std::vector<TruckCandidate>> truck_routes(inst.num_trucks());
  for (int v = 0; v < inst.num_trucks(); ++v) {
    TruckEnum te{tg, cap, budget.max_routes, guard, {}, {}};
    te.out.push_back(TruckCandidate{});
    for (int a : tg.out_arcs[tg.source]) {
      if (tg.head_loc(a) != tstarts[v]) continue;
      te.path.push_back(a);
      te.dfs(tg.arcs[a].head, 0, -1, tg.arcs[a].weight);
      te.path.pop_back();
    }
    truck_routes[v] = std::move(te.out);
  }

  const unsigned full = (inst.num_requests() >= 32)
                            ? ~0u
                            : ((1u << inst.num_requests()) - 1);
  const auto& dstarts = inst.driver_start;

  // Evaluates one covering truck-route combination.
  auto evaluate = [&](const std::vector<int>& combo, std::int64_t truck_cost) {
    // Truck usage per arc and driver demand per LTX arc.
    std::vector<int> usage(tg.num_arcs(), 0);
    for (int v = 0; v < inst.num_trucks(); ++v) {
      for (int a : truck_routes[v][combo[v]].arcs) ++usage[a];
    }
    std::vector<int> demand(xg.num_arcs(), 0);
    for (int e = 0; e < xg.num_arcs(); ++e) {
      for (int a : graphs.sync_arcs[e]) demand[e] += usage[a];
    }

    const std::int64_t driver_cap = best < kInfCost ? best - truck_cost - 1 : -1;
    std::vector<std::vector<DriverCandidate>> cands(inst.num_drivers());
    for (int d = 0; d < inst.num_drivers(); ++d) {
      DriverEnum de{xg,      inst.horizon, demand, dstarts[d],
                    driver_cap, guard,     {},     {},
                    std::vector<char>(inst.horizon.total_instants(), 0)};
      de.dfs(xg.source, 0);
      if (de.out.empty()) return;  // this driver cannot even rest within budget
      cands[d] = std::move(de.out);
    }

    JointDriverSearch js{xg, demand, cands, guard, std::vector<int>(xg.num_arcs(), 0), {}, {}, {}};
    js.best = best < kInfCost ? best - truck_cost : kInfCost;
    js.dfs(0, 0);
    if (js.best_pick.empty() && inst.num_drivers() > 0) return;
    const std::int64_t total = truck_cost + js.best;
    if (total >= best) return;

    best = total;
    have_plan = true;
    best_plan = Plan{};
    best_plan.trucks.resize(inst.num_trucks());
    for (int v = 0; v < inst.num_trucks(); ++v) {
      best_plan.trucks[v].agent = v;
      best_plan.trucks[v].arcs = truck_routes[v][combo[v]].arcs;
    }
    best_plan.drivers.resize(inst.num_drivers());
    best_plan.day_off.resize(inst.num_drivers());
    for (int d = 0; d < inst.num_drivers(); ++d) {
      const DriverCandidate& c = cands[d][js.best_pick[d]];
      best_plan.drivers[d].agent = d;
      best_plan.drivers[d].arcs = c.arcs;
      best_plan.day_off[d] = c.day_off;
    }
  };

  // Covering combinations of truck routes.
  std::vector<int> combo(inst.num_trucks(), 0);
  auto combos = [&](auto&& self, int v, unsigned served, std::int64_t cost) -> void {
    guard.tick();
    if (cost >= best) return;
    if (v == inst.num_trucks()) {
      if (served == full) evaluate(combo, cost);
      return;
    }
    for (int c = 0; c < static_cast<int>(truck_routes[v].size()); ++c) {
      const TruckCandidate& cand = truck_routes[v][c];
      if (served & cand.served) continue;  // request served twice
      combo[v] = c;
      self(self, v + 1, served | cand.served, cost + cand.cost);
    }
  };
  combos(combos, 0, 0, 0);

  OracleResult res;
  if (!have_plan) {
    res.status = OracleStatus::Infeasible;
    return res;
  }
  res.status = OracleStatus::Optimal;
  res.plan = std::move(best_plan);
  res.value = best;
  return res;
}

}  // namespace svrcsp
