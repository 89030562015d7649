#include "svrcsp/cuts.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <stdexcept>

namespace svrcsp {

const char* cut_family_name(CutFamily f) {
  switch (f) {
    case CutFamily::Prec: return "PREC";
    case CutFamily::Pd1: return "PD1";
    case CutFamily::Pd2: return "PD2";
    case CutFamily::Pd3: return "PD3";
    case CutFamily::Sec1: return "SEC1";
    case CutFamily::Sec2: return "SEC2";
  }
  return "?";
}

bool CutPool::add(Cut cut) {
  auto it = std::lower_bound(names_.begin(), names_.end(), cut.name);
  if (it != names_.end() && *it == cut.name) return false;
  names_.insert(it, cut.name);
  cuts.push_back(std::move(cut));
  return true;
}

void CutPool::add_all(std::vector<Cut> more) {
  for (Cut& c : more) add(std::move(c));
}

int CutPool::count(CutFamily f) const {
  int n = 0;
  for (const Cut& c : cuts) n += (c.family == f);
  return n;
}

double cut_violation(const Cut& cut, const std::vector<double>& x) {
  double lhs = 0.0;
  for (auto [j, c] : cut.coeffs) lhs += c * x[j];
  return (cut.sense == 'L') ? lhs - cut.rhs : cut.rhs - lhs;
}

namespace {

class Acc {
 public:
  void add(int var, double coeff) {
    if (var >= 0) acc_[var] += coeff;
  }
  std::vector<std::pair<int, double>> take() {
    std::vector<std::pair<int, double>> out(acc_.begin(), acc_.end());
    acc_.clear();
    return out;
  }

 private:
  std::map<int, double> acc_;
};

struct Ctx {
  const MilpModel& model;
  const Instance& inst;
  const TimeExpandedDigraph& tg;

  explicit Ctx(const MilpModel& m)
      : model(m), inst(*m.graphs->inst), tg(m.graphs->truck) {}

  bool aggregated() const { return model.options.flavor == Flavor::LTR; }

  // PD/SEC families need per-truck variables; under LTR they only make
  // sense with a single truck.
  bool per_truck_ok() const { return !aggregated() || inst.num_trucks() == 1; }

  int trucks_for_cuts() const { return aggregated() ? 1 : inst.num_trucks(); }

  void add_arcs(Acc& acc, int v, const std::vector<int>& arcs, double coeff) const {
    for (int a : arcs) {
      acc.add(aggregated() ? model.var_flow(a) : model.var_truck(v, a), coeff);
    }
  }

  void add_arcs_all_trucks(Acc& acc, const std::vector<int>& arcs, double coeff) const {
    for (int v = 0; v < trucks_for_cuts(); ++v) add_arcs(acc, v, arcs, coeff);
  }

  // Trip arcs usable for the loaded-trip tightening: all trips under LT,
  // loaded-tagged trips under LTC, request-tagged under LTR (req < 0
  // accepts any request tag).
  std::vector<int> loaded_trips(int req) const {
    std::vector<int> out;
    for (int a = 0; a < tg.num_arcs(); ++a) {
      if (tg.arcs[a].kind != ArcKind::Trip) continue;
      const int tag = tg.nodes[tg.arcs[a].tail].tag;
      switch (model.options.flavor) {
        case Flavor::LT: break;
        case Flavor::LTC:
          if (tag != kTagLoaded) continue;
          break;
        case Flavor::LTR:
          if (tag < 0 || (req >= 0 && tag != req)) continue;
          break;
        default: break;
      }
      out.push_back(a);
    }
    return out;
  }
};

Cut make_cut(CutFamily family, std::string name, Acc& acc, char sense, double rhs) {
  Cut cut;
  cut.family = family;
  cut.name = std::move(name);
  cut.coeffs = acc.take();
  cut.sense = sense;
  cut.rhs = rhs;
  return cut;
}

std::string req_set_tag(const std::vector<int>& reqs) {
  std::string s;
  for (int r : reqs) s += "_" + std::to_string(r);
  return s;
}

// All size-k index combinations of {0..n-1}, lexicographic.
void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    fn(idx);
    int p = k - 1;
    while (p >= 0 && idx[p] == n - k + p) --p;
    if (p < 0) return;
    ++idx[p];
    for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
  }
}

}  // namespace

std::vector<Cut> gen_prec(const MilpModel& model) {
  Ctx ctx(model);
  if (model.options.flavor == Flavor::LTR) return {};  // structural
  std::vector<Cut> out;
  Acc acc;
  for (const Request& r : ctx.inst.requests) {
    const auto pickups = ctx.tg.service_arcs(ArcKind::Pickup, r.id);
    const auto deliveries = ctx.tg.service_arcs(ArcKind::Delivery, r.id);
    const std::int64_t travel = ctx.inst.truck_time.at(r.pickup_loc, r.delivery_loc);
    for (int i : service_start_instants(ctx.inst.horizon, r, Side::Delivery)) {
      std::vector<int> lhs, rhs;
      for (int p : pickups) {
        if (ctx.tg.head_instant(p) <= i - travel) lhs.push_back(p);
      }
      for (int e : deliveries) {
        if (ctx.tg.tail_instant(e) <= i) rhs.push_back(e);
      }
      ctx.add_arcs_all_trucks(acc, lhs, 1.0);
      ctx.add_arcs_all_trucks(acc, rhs, -1.0);
      out.push_back(make_cut(CutFamily::Prec,
                             "PREC_r" + std::to_string(r.id) + "_i" + std::to_string(i), acc, 'G',
                             0.0));
    }
  }
  return out;
}

std::vector<Cut> gen_pd1(const MilpModel& model) {
  Ctx ctx(model);
  if (!ctx.per_truck_ok()) return {};
  std::vector<Cut> out;
  Acc acc;
  const auto trips = ctx.loaded_trips(-1);
  for (int l = 0; l < ctx.inst.num_locations; ++l) {
    std::vector<int> trips_from, trips_to, pickups, deliveries;
    for (int a : trips) {
      if (ctx.tg.tail_loc(a) == l) trips_from.push_back(a);
      if (ctx.tg.head_loc(a) == l) trips_to.push_back(a);
    }
    for (const Request& r : ctx.inst.requests) {
      if (r.pickup_loc == l) {
        for (int a : ctx.tg.service_arcs(ArcKind::Pickup, r.id)) pickups.push_back(a);
      }
      if (r.delivery_loc == l) {
        for (int a : ctx.tg.service_arcs(ArcKind::Delivery, r.id)) deliveries.push_back(a);
      }
    }
    for (int v = 0; v < ctx.trucks_for_cuts(); ++v) {
      if (!pickups.empty()) {
        ctx.add_arcs(acc, v, trips_from, 1.0);
        ctx.add_arcs(acc, v, pickups, -1.0);
        out.push_back(make_cut(CutFamily::Pd1,
                               "PD1_P_l" + std::to_string(l) + "_v" + std::to_string(v), acc, 'G',
                               0.0));
      }
      if (!deliveries.empty()) {
        ctx.add_arcs(acc, v, trips_to, 1.0);
        ctx.add_arcs(acc, v, deliveries, -1.0);
        out.push_back(make_cut(CutFamily::Pd1,
                               "PD1_D_l" + std::to_string(l) + "_v" + std::to_string(v), acc, 'G',
                               0.0));
      }
    }
  }
  return out;
}

std::vector<Cut> gen_pd2(const MilpModel& model) {
  Ctx ctx(model);
  if (!ctx.per_truck_ok()) return {};
  std::vector<Cut> out;
  Acc acc;
  const auto trips = ctx.loaded_trips(-1);
  for (int l = 0; l < ctx.inst.num_locations; ++l) {
    std::vector<int> instants;
    int min_service = -1;
    std::vector<const Request*> local;
    for (const Request& r : ctx.inst.requests) {
      if (r.pickup_loc != l) continue;
      local.push_back(&r);
      if (min_service < 0 || r.pickup_service < min_service) min_service = r.pickup_service;
      for (int i : service_start_instants(ctx.inst.horizon, r, Side::Pickup))
        instants.push_back(i);
    }
    if (local.empty()) continue;
    std::sort(instants.begin(), instants.end());
    instants.erase(std::unique(instants.begin(), instants.end()), instants.end());

    std::vector<int> trips_from;
    for (int a : trips) {
      if (ctx.tg.tail_loc(a) == l) trips_from.push_back(a);
    }
    for (int i : instants) {
      std::vector<int> lhs, rhs;
      for (int a : trips_from) {
        if (ctx.tg.tail_instant(a) >= i + min_service) lhs.push_back(a);
      }
      for (const Request* r : local) {
        for (int a : ctx.tg.service_arcs(ArcKind::Pickup, r->id)) {
          if (ctx.tg.tail_instant(a) >= i) rhs.push_back(a);
        }
      }
      for (int v = 0; v < ctx.trucks_for_cuts(); ++v) {
        ctx.add_arcs(acc, v, lhs, 1.0);
        ctx.add_arcs(acc, v, rhs, -1.0);
        out.push_back(make_cut(CutFamily::Pd2,
                               "PD2_l" + std::to_string(l) + "_i" + std::to_string(i) + "_v" +
                                   std::to_string(v),
                               acc, 'G', 0.0));
      }
    }
  }
  return out;
}

std::vector<Cut> gen_pd3(const MilpModel& model, int k, Pd3Variant variant) {
  if (k < 1) throw std::invalid_argument("gen_pd3: k must be positive");
  Ctx ctx(model);
  const Instance& inst = ctx.inst;
  const bool ltr = ctx.aggregated();
  if (ltr && k < inst.num_trucks()) return {};  // LTR needs V' = V

  // Truck subsets V' with |V'| <= k, as bitmasks in increasing order.
  std::vector<unsigned> masks;
  const int V = inst.num_trucks();
  if (ltr) {
    masks.push_back((1u << V) - 1);
  } else {
    for (unsigned m = 1; m < (1u << V); ++m) {
      if (std::popcount(m) <= k) masks.push_back(m);
    }
  }

  std::vector<Cut> out;
  Acc acc;
  for (const Request& r : inst.requests) {
    const auto pickups = ctx.tg.service_arcs(ArcKind::Pickup, r.id);
    const auto deliveries = ctx.tg.service_arcs(ArcKind::Delivery, r.id);
    const auto trips = ctx.loaded_trips(r.id);
    const std::int64_t travel = inst.truck_time.at(r.pickup_loc, r.delivery_loc);
    for (int e1 : pickups) {
      const bool a1 = ctx.inst.horizon.time_of(ctx.tg.tail_instant(e1)) == r.pickup_open;
      for (int e2 : deliveries) {
        if (ctx.tg.head_instant(e1) + travel > ctx.tg.tail_instant(e2)) continue;
        const bool a2 = ctx.inst.horizon.time_of(ctx.tg.tail_instant(e2)) == r.delivery_close;
        if (variant == Pd3Variant::A && !(a1 && a2)) continue;
        if (variant == Pd3Variant::B && !(a1 || a2)) continue;

        std::vector<int> late_pickups, early_deliveries, bracket_trips;
        for (int e : pickups) {
          if (ctx.tg.tail_instant(e) >= ctx.tg.tail_instant(e1)) late_pickups.push_back(e);
        }
        for (int e : deliveries) {
          if (ctx.tg.head_instant(e) <= ctx.tg.head_instant(e2)) early_deliveries.push_back(e);
        }
        for (int e : trips) {
          if (ctx.tg.tail_loc(e) == r.pickup_loc &&
              ctx.tg.tail_instant(e) >= ctx.tg.head_instant(e1) &&
              ctx.tg.head_instant(e) <= ctx.tg.tail_instant(e2))
            bracket_trips.push_back(e);
        }
        for (unsigned m : masks) {
          for (int v = 0; v < V; ++v) {
            if (!(m & (1u << v))) continue;
            ctx.add_arcs(acc, ltr ? 0 : v, late_pickups, 1.0);
            ctx.add_arcs(acc, ltr ? 0 : v, early_deliveries, 1.0);
            ctx.add_arcs(acc, ltr ? 0 : v, bracket_trips, -1.0);
            if (ltr) break;  // aggregated variables, one pass
          }
          out.push_back(make_cut(CutFamily::Pd3,
                                 "PD3_r" + std::to_string(r.id) + "_e" + std::to_string(e1) +
                                     "_e" + std::to_string(e2) + "_V" + std::to_string(m),
                                 acc, 'L', 1.0));
        }
      }
    }
  }
  return out;
}

namespace {

// Timeline simulation of one request order.
int simulate_order(const Instance& inst, const std::vector<int>& order, DurMode mode,
                   int anchor) {
  const Horizon& h = inst.horizon;
  std::int64_t t;
  int loc;
  if (mode == DurMode::DeliverFromInstant) {
    t = anchor;
    loc = inst.requests[order.front()].pickup_loc;
  } else {
    t = 0;
    loc = inst.truck_start_locations()[anchor];
  }
  const std::int64_t start = t;
  for (std::size_t idx = 0; idx < order.size(); ++idx) {
    const Request& r = inst.requests[order[idx]];
    if (!(mode == DurMode::DeliverFromInstant && idx == 0)) {
      t += inst.truck_time.at(loc, r.pickup_loc);
    }
    // Wait for the next feasible pickup start.
    const auto pstarts = service_start_instants(h, r, Side::Pickup);
    auto it = std::lower_bound(pstarts.begin(), pstarts.end(), static_cast<int>(t));
    if (t > pstarts.back() || it == pstarts.end()) return kInfDuration;
    t = *it + r.pickup_service;
    if (mode == DurMode::PickupFromStart && idx + 1 == order.size())
      return static_cast<int>(t - start);
    t += inst.truck_time.at(r.pickup_loc, r.delivery_loc);
    const auto dstarts = service_start_instants(h, r, Side::Delivery);
    auto jt = std::lower_bound(dstarts.begin(), dstarts.end(), static_cast<int>(t));
    if (t > dstarts.back() || jt == dstarts.end()) return kInfDuration;
    t = *jt + r.delivery_service;
    loc = r.delivery_loc;
  }
  return static_cast<int>(t - start);
}

}  // namespace

int min_duration(const Instance& inst, const std::vector<int>& reqs, DurMode mode, int anchor) {
  if (reqs.size() < 2 || reqs.size() > 7)
    throw std::invalid_argument("min_duration: |R'| must be between 2 and 7");
  std::vector<int> order = reqs;
  std::sort(order.begin(), order.end());
  int best = kInfDuration;
  do {
    best = std::min(best, simulate_order(inst, order, mode, anchor));
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

std::vector<Cut> gen_sec1(const MilpModel& model, int kmax) {
  if (kmax < 2) throw std::invalid_argument("gen_sec1: kmax must be at least 2");
  Ctx ctx(model);
  if (!ctx.per_truck_ok()) return {};
  const Instance& inst = ctx.inst;
  std::vector<Cut> out;
  Acc acc;
  const int R = inst.num_requests();
  for (int size = 2; size <= std::min(kmax, R); ++size) {
    for_each_subset(R, size, [&](const std::vector<int>& reqs) {
      const std::string tag = req_set_tag(reqs);
      for (int v = 0; v < ctx.trucks_for_cuts(); ++v) {
        const int dur_d = min_duration(inst, reqs, DurMode::DeliverFromStart, v);
        if (dur_d != kInfDuration) {
          std::vector<int> arcs;
          for (int r : reqs) {
            for (int a : ctx.tg.service_arcs(ArcKind::Delivery, r)) {
              if (ctx.tg.head_instant(a) < dur_d) arcs.push_back(a);
            }
          }
          ctx.add_arcs(acc, v, arcs, 1.0);
          out.push_back(make_cut(CutFamily::Sec1, "SEC1_D_R" + tag + "_v" + std::to_string(v),
                                 acc, 'L', static_cast<double>(size - 1)));
        }
        const int dur_p = min_duration(inst, reqs, DurMode::PickupFromStart, v);
        if (dur_p != kInfDuration) {
          std::vector<int> arcs;
          for (int r : reqs) {
            for (int a : ctx.tg.service_arcs(ArcKind::Pickup, r)) {
              if (ctx.tg.head_instant(a) < dur_p) arcs.push_back(a);
            }
          }
          ctx.add_arcs(acc, v, arcs, 1.0);
          out.push_back(make_cut(CutFamily::Sec1, "SEC1_P_R" + tag + "_v" + std::to_string(v),
                                 acc, 'L', static_cast<double>(size - 1)));
        }
      }
    });
  }
  return out;
}

std::vector<Cut> gen_sec2(const MilpModel& model, int kmax) {
  if (kmax < 2) throw std::invalid_argument("gen_sec2: kmax must be at least 2");
  Ctx ctx(model);
  if (!ctx.per_truck_ok()) return {};
  const Instance& inst = ctx.inst;
  const int total = inst.horizon.total_instants();
  std::vector<Cut> out;
  Acc acc;
  const int R = inst.num_requests();
  for (int size = 2; size <= std::min(kmax, R); ++size) {
    for_each_subset(R, size, [&](const std::vector<int>& reqs) {
      const std::string tag = req_set_tag(reqs);
      for (int i = 0; i < total; ++i) {
        const int dur = min_duration(inst, reqs, DurMode::DeliverFromInstant, i);
        if (dur == kInfDuration) continue;
        std::vector<int> arcs;
        for (int r : reqs) {
          for (int a : ctx.tg.service_arcs(ArcKind::Delivery, r)) {
            if (ctx.tg.tail_instant(a) >= i && ctx.tg.head_instant(a) < i + dur)
              arcs.push_back(a);
          }
        }
        if (arcs.empty()) continue;
        for (int v = 0; v < ctx.trucks_for_cuts(); ++v) {
          ctx.add_arcs(acc, v, arcs, 1.0);
          out.push_back(make_cut(CutFamily::Sec2,
                                 "SEC2_R" + tag + "_i" + std::to_string(i) + "_v" +
                                     std::to_string(v),
                                 acc, 'L', static_cast<double>(size - 1)));
        }
      }
    });
  }
  return out;
}

std::vector<Cut> gen_all(const MilpModel& model) {
  std::vector<Cut> out = gen_prec(model);
  auto append = [&out](std::vector<Cut> more) {
    for (Cut& c : more) out.push_back(std::move(c));
  };
  append(gen_pd1(model));
  append(gen_pd2(model));
  const int k = std::min(2, model.graphs->inst->num_trucks());
  append(gen_pd3(model, k, Pd3Variant::B));
  if (model.graphs->inst->num_requests() >= 2) {
    append(gen_sec1(model, 3));
    append(gen_sec2(model, 3));
  }
  return out;
}

std::vector<Cut> separate(const CutPool& pool, const std::vector<double>& x, double tolerance,
                          int cap) {
  std::vector<const Cut*> violated;
  for (const Cut& c : pool.cuts) {
    if (cut_violation(c, x) > tolerance) violated.push_back(&c);
  }
  std::sort(violated.begin(), violated.end(), [&x](const Cut* a, const Cut* b) {
    const double va = cut_violation(*a, x), vb = cut_violation(*b, x);
    if (va != vb) return va > vb;
    return a->name < b->name;
  });
  if (cap >= 0 && static_cast<int>(violated.size()) > cap) violated.resize(cap);
  std::vector<Cut> out;
  out.reserve(violated.size());
  for (const Cut* c : violated) out.push_back(*c);
  return out;
}

}  // namespace svrcsp
