#include "svrcsp/heuristic.hpp"

#include <algorithm>
#include <optional>

namespace svrcsp {

namespace {

struct Step {
  ArcKind kind = ArcKind::Trip;
  int from = -1;
  int to = -1;
  int start = -1;
  int len = 0;
  int req = -1;
};

// One truck-and-dedicated-driver pair: their shared work timeline.
struct PairState {
  int truck = -1;
  int driver = -1;  // -1 until a driver is attached
  int cur_loc = -1;
  int cur_t = 0;
  int jobs = 0;  // requests already assigned to this pair
  std::vector<char> busy;       // work occupies an instant
  std::vector<char> forbidden;  // designated full-rest days
  std::vector<Step> steps;
};

struct Scheduler {
  const Instance& inst;
  const Horizon& h;

  bool block_ok(const PairState& p, int t, int len) const {
    const int I = h.instants_per_day;
    if (t < 0 || t + len > h.total_instants()) return false;
    for (int u = t; u < t + len; ++u) {
      if (p.busy[u] || p.forbidden[u]) return false;
    }
    // Every daily window touched by the block keeps work <= I/2.
    const int lo = std::max(0, t - I + 1);
    const int hi = std::min(t + len - 1, I * (h.days - 1));
    for (int w = lo; w <= hi; ++w) {
      int work = 0;
      int overlap = std::max(0, std::min(w + I, t + len) - std::max(w, t));
      for (int u = w; u < w + I; ++u) work += p.busy[u];
      if (work + overlap > I / 2) return false;
    }
    return true;
  }

  // Earliest feasible start >= t for a work block, or -1.
  int earliest(const PairState& p, int t, int len) const {
    for (int u = std::max(t, 0); u + len <= h.total_instants(); ++u) {
      if (block_ok(p, u, len)) return u;
    }
    return len == 0 ? t : -1;
  }

  // Earliest feasible service start >= t within the request window, or -1.
  int earliest_service(const PairState& p, int t, const Request& r, Side side) const {
    const auto starts = service_start_instants(h, r, side);
    const int len = side == Side::Pickup ? r.pickup_service : r.delivery_service;
    for (int u : starts) {
      if (u >= t && block_ok(p, u, len)) return u;
    }
    return -1;
  }

  void commit(PairState& p, const Step& s) {
    for (int u = s.start; u < s.start + s.len; ++u) p.busy[u] = 1;
    p.steps.push_back(s);
    p.cur_loc = s.to;
    p.cur_t = s.start + s.len;
  }

  // Simulated service of request r; returns completion instant and the
  // steps, without committing.
  std::optional<std::pair<int, std::vector<Step>>> try_serve(const PairState& base,
                                                             const Request& r) const {
    PairState p = base;
    std::vector<Step> added;
    auto work = [&](ArcKind kind, int from, int to, int t, int len, int req) -> bool {
      const int start =
          (kind == ArcKind::Pickup || kind == ArcKind::Delivery)
              ? earliest_service(p, t, r, kind == ArcKind::Pickup ? Side::Pickup : Side::Delivery)
              : earliest(p, t, len);
      if (start < 0) return false;
      Step s{kind, from, to, start, len, req};
      for (int u = s.start; u < s.start + s.len; ++u) p.busy[u] = 1;
      p.cur_loc = to;
      p.cur_t = s.start + s.len;
      added.push_back(s);
      return true;
    };

    if (p.cur_loc != r.pickup_loc) {
      const int len = static_cast<int>(inst.truck_time.at(p.cur_loc, r.pickup_loc));
      if (!work(ArcKind::Trip, p.cur_loc, r.pickup_loc, p.cur_t, len, -1)) return std::nullopt;
    }
    if (!work(ArcKind::Pickup, r.pickup_loc, r.pickup_loc, p.cur_t, r.pickup_service, r.id))
      return std::nullopt;
    {
      const int len = static_cast<int>(inst.truck_time.at(r.pickup_loc, r.delivery_loc));
      if (len > 0 &&
          !work(ArcKind::Trip, r.pickup_loc, r.delivery_loc, p.cur_t, len, -1))
        return std::nullopt;
    }
    if (!work(ArcKind::Delivery, r.delivery_loc, r.delivery_loc, p.cur_t, r.delivery_service,
              r.id))
      return std::nullopt;
    return std::make_pair(p.cur_t, added);
  }
};

// Finds the arc of the given shape leaving `tail`; -1 when absent.
int find_arc(const TimeExpandedDigraph& g, int tail, ArcKind kind, int head) {
  for (int a : g.out_arcs[tail]) {
    if (g.arcs[a].kind == kind && g.arcs[a].head == head) return a;
  }
  return -1;
}

}  // namespace

std::optional<Plan> greedy_warm_start(const Instance& inst, const GraphBundle& graphs) {
  const Horizon& h = inst.horizon;
  const int total = h.total_instants();
  const int I = h.instants_per_day;
  Scheduler sched{inst, h};

  const auto& tstarts = inst.truck_start;
  const auto& dstarts = inst.driver_start;

  std::vector<char> forbidden(total, 0);
  if (h.days >= 7) {
    for (int j = 6; j < h.days; j += 7) {
      for (int u = I * j; u < I * (j + 1); ++u) forbidden[u] = 1;
    }
  }

  std::vector<PairState> pairs;
  std::vector<bool> driver_used;
  auto attach_driver = [&](PairState& p) -> bool {
    if (p.driver >= 0) return true;
    int pick = -1;
    for (int d = 0; d < inst.num_drivers(); ++d) {
      if (!driver_used[d] && dstarts[d] == tstarts[p.truck]) {
        pick = d;
        break;
      }
    }
    if (pick < 0) {
      for (int d = 0; d < inst.num_drivers(); ++d) {
        if (!driver_used[d]) {
          pick = d;
          break;
        }
      }
    }
    if (pick < 0) return false;
    // A remote driver taxis over before the truck moves.
    if (dstarts[pick] != tstarts[p.truck]) {
      const int len = static_cast<int>(inst.taxi_time.at(dstarts[pick], tstarts[p.truck]));
      const int start = sched.earliest(p, 0, len);
      if (start < 0) return false;
      sched.commit(p, Step{ArcKind::Taxi, dstarts[pick], tstarts[p.truck], start, len, -1});
      p.cur_loc = tstarts[p.truck];
    }
    p.driver = pick;
    driver_used[pick] = true;
    return true;
  };

  // One sequential-insertion pass.  `by_pickup` orders requests by the
  // pickup day instead of the delivery day; `balance` prefers the pair with
  // the fewest assigned requests (the daily work cap binds before distance
  // does on tight horizons).
  auto attempt = [&](bool balance, bool by_pickup) -> bool {
    pairs.assign(inst.num_trucks(), PairState{});
    for (int v = 0; v < inst.num_trucks(); ++v) {
      pairs[v].truck = v;
      pairs[v].cur_loc = tstarts[v];
      pairs[v].busy.assign(total, 0);
      pairs[v].forbidden = forbidden;
    }
    driver_used.assign(inst.num_drivers(), false);

    std::vector<int> order(inst.num_requests());
    for (int i = 0; i < inst.num_requests(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const Request& ra = inst.requests[a];
      const Request& rb = inst.requests[b];
      const int ka = by_pickup ? ra.pickup_day : ra.delivery_day;
      const int kb = by_pickup ? rb.pickup_day : rb.delivery_day;
      if (ka != kb) return ka < kb;
      return a < b;
    });

    for (int ri : order) {
      const Request& r = inst.requests[ri];
      int best_truck = -1, best_completion = 0, best_jobs = 0;
      std::vector<Step> best_steps;
      auto consider = [&](int v, int completion, std::vector<Step> steps) {
        const int jobs = pairs[v].jobs;
        const bool better =
            best_truck < 0 ||
            (balance ? std::make_pair(jobs, completion) <
                           std::make_pair(best_jobs, best_completion)
                     : completion < best_completion);
        if (better) {
          best_truck = v;
          best_completion = completion;
          best_jobs = jobs;
          best_steps = std::move(steps);
        }
      };
      for (int v = 0; v < inst.num_trucks(); ++v) {
        PairState& p = pairs[v];
        if (p.driver < 0) {
          // Only consider trucks that can still get a driver.
          bool any_free = false;
          for (int d = 0; d < inst.num_drivers(); ++d) any_free = any_free || !driver_used[d];
          if (!any_free) continue;
          // Tentatively account for a possible initial taxi ride by simulating
          // on a copy with the attachment applied.
          PairState copy = p;
          std::vector<bool> used_copy = driver_used;
          std::swap(driver_used, used_copy);
          const bool ok = attach_driver(copy);
          std::swap(driver_used, used_copy);
          if (!ok) continue;
          if (auto res = sched.try_serve(copy, r)) consider(v, res->first, res->second);
          continue;
        }
        if (auto res = sched.try_serve(p, r)) consider(v, res->first, res->second);
      }
      if (best_truck < 0) return false;
      PairState& p = pairs[best_truck];
      if (p.driver < 0) {
        if (!attach_driver(p)) return false;
        // Redo the simulation on the committed state (the taxi ride may have
        // shifted feasible starts).
        auto res = sched.try_serve(p, r);
        if (!res) return false;
        best_steps = res->second;
      }
      for (const Step& s : best_steps) sched.commit(p, s);
      ++p.jobs;
    }
    return true;
  };

  bool built = false;
  for (const auto [balance, by_pickup] :
       {std::pair{false, false}, {true, false}, {false, true}, {true, true}}) {
    if (attempt(balance, by_pickup)) {
      built = true;
      break;
    }
  }
  if (!built) return std::nullopt;

  // Materialise routes.
  Plan plan;
  plan.trucks.resize(inst.num_trucks());
  plan.drivers.resize(inst.num_drivers());
  plan.day_off.assign(inst.num_drivers(), std::vector<std::uint8_t>(h.days, 0));

  const TimeExpandedDigraph& tg = graphs.truck;
  const TimeExpandedDigraph& xg = graphs.ltx;
  const bool tagged = tg.flavor != Flavor::LT;
  const int empty_tag = tagged ? kTagEmpty : kTagNone;

  auto truck_route = [&](const PairState& p) -> std::optional<std::vector<int>> {
    std::vector<int> arcs;
    int loc = tstarts[p.truck], t = 0, tag = empty_tag;
    int node = tg.find_node(loc, 0, empty_tag);
    if (node < 0) return std::nullopt;
    const int source_arc = find_arc(tg, tg.source, ArcKind::Source, node);
    if (source_arc < 0) return std::nullopt;
    arcs.push_back(source_arc);
    auto advance_to = [&](int until) -> bool {
      while (t < until) {
        const int here = tg.find_node(loc, t, tag);
        const int next = tg.find_node(loc, t + 1, tag);
        if (here < 0 || next < 0) return false;
        const int a = find_arc(tg, here, ArcKind::Rest, next);
        if (a < 0) return false;
        arcs.push_back(a);
        ++t;
      }
      return true;
    };
    for (const Step& s : p.steps) {
      if (s.kind == ArcKind::Taxi) continue;  // driver-only
      if (!advance_to(s.start)) return std::nullopt;
      int next_tag = tag;
      if (s.kind == ArcKind::Pickup)
        next_tag = tagged ? (tg.flavor == Flavor::LTR ? s.req : kTagLoaded) : kTagNone;
      if (s.kind == ArcKind::Delivery) next_tag = empty_tag;
      const int from = tg.find_node(s.from, s.start, tag);
      const int to = tg.find_node(s.to, s.start + s.len, next_tag);
      if (from < 0 || to < 0) return std::nullopt;
      const int a = find_arc(tg, from, s.kind, to);
      if (a < 0) return std::nullopt;
      arcs.push_back(a);
      loc = s.to;
      t = s.start + s.len;
      tag = next_tag;
    }
    if (!advance_to(total)) return std::nullopt;
    const int last = tg.find_node(loc, total, tag);
    if (last < 0) return std::nullopt;
    const int sink_arc = find_arc(tg, last, ArcKind::Sink, tg.sink);
    if (sink_arc < 0) return std::nullopt;
    arcs.push_back(sink_arc);
    return arcs;
  };

  auto driver_route = [&](int start_loc,
                          const std::vector<Step>& steps) -> std::optional<std::vector<int>> {
    std::vector<int> arcs;
    int loc = start_loc, t = 0;
    int node = xg.find_node(loc, 0, kTagNone);
    if (node < 0) return std::nullopt;
    const int source_arc = find_arc(xg, xg.source, ArcKind::Source, node);
    if (source_arc < 0) return std::nullopt;
    arcs.push_back(source_arc);
    auto advance_to = [&](int until) -> bool {
      while (t < until) {
        const int here = xg.find_node(loc, t, kTagNone);
        const int next = xg.find_node(loc, t + 1, kTagNone);
        if (here < 0 || next < 0) return false;
        const int a = find_arc(xg, here, ArcKind::Rest, next);
        if (a < 0) return false;
        arcs.push_back(a);
        ++t;
      }
      return true;
    };
    for (const Step& s : steps) {
      if (!advance_to(s.start)) return std::nullopt;
      const int from = xg.find_node(s.from, s.start, kTagNone);
      const int to = xg.find_node(s.to, s.start + s.len, kTagNone);
      if (from < 0 || to < 0) return std::nullopt;
      const int a = find_arc(xg, from, s.kind, to);
      if (a < 0) return std::nullopt;
      arcs.push_back(a);
      loc = s.to;
      t = s.start + s.len;
    }
    if (!advance_to(total)) return std::nullopt;
    const int last = xg.find_node(loc, total, kTagNone);
    if (last < 0) return std::nullopt;
    const int sink_arc = find_arc(xg, last, ArcKind::Sink, xg.sink);
    if (sink_arc < 0) return std::nullopt;
    arcs.push_back(sink_arc);
    return arcs;
  };

  for (int v = 0; v < inst.num_trucks(); ++v) {
    const PairState& p = pairs[v];
    plan.trucks[v].agent = v;
    bool has_work = false;
    for (const Step& s : p.steps) has_work = has_work || s.kind != ArcKind::Taxi;
    if (!has_work) continue;  // unused trucks stay home (empty route)
    auto arcs = truck_route(p);
    if (!arcs) return std::nullopt;
    plan.trucks[v].arcs = std::move(*arcs);
  }

  for (int d = 0; d < inst.num_drivers(); ++d) plan.drivers[d].agent = d;
  for (int v = 0; v < inst.num_trucks(); ++v) {
    const PairState& p = pairs[v];
    if (p.driver < 0) continue;
    auto arcs = driver_route(dstarts[p.driver], p.steps);
    if (!arcs) return std::nullopt;
    plan.drivers[p.driver].arcs = std::move(*arcs);
    for (int j = 0; j < h.days; ++j) {
      bool off = true;
      for (int u = I * j; u < I * (j + 1); ++u) off = off && !p.busy[u];
      plan.day_off[p.driver][j] = off ? 1 : 0;
    }
  }
  // Idle drivers rest at home all horizon.
  for (int d = 0; d < inst.num_drivers(); ++d) {
    if (!plan.drivers[d].arcs.empty()) continue;
    auto arcs = driver_route(dstarts[d], {});
    if (!arcs) return std::nullopt;
    plan.drivers[d].arcs = std::move(*arcs);
    std::fill(plan.day_off[d].begin(), plan.day_off[d].end(), 1);
  }

  if (!check_plan(plan, graphs).empty()) return std::nullopt;
  return plan;
}

}  // namespace svrcsp
