#include "svrcsp/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace svrcsp {

namespace {

std::string var_name(VarKind kind, int agent, int index) {
  switch (kind) {
    case VarKind::TruckArc: return "X_v" + std::to_string(agent) + "_a" + std::to_string(index);
    case VarKind::FlowArc: return "X_a" + std::to_string(index);
    case VarKind::DriverArc: return "Y_d" + std::to_string(agent) + "_a" + std::to_string(index);
    case VarKind::DayOff: return "W_d" + std::to_string(agent) + "_j" + std::to_string(index);
  }
  return {};
}

// Accumulates coefficients, merging duplicate columns.
class RowBuilder {
 public:
  void add(int var, double coeff) {
    if (var < 0) throw std::logic_error("model row references a missing variable");
    acc_[var] += coeff;
  }
  std::vector<std::pair<int, double>> take() {
    std::vector<std::pair<int, double>> out(acc_.begin(), acc_.end());
    acc_.clear();
    return out;
  }
  bool empty() const { return acc_.empty(); }

 private:
  std::map<int, double> acc_;
};

struct Builder {
  const Instance& inst;
  const GraphBundle& graphs;
  BuildOptions options;
  MilpModel model;

  bool arc_in_agent_set(const TimeExpandedDigraph& g, int arc, int start_loc) const {
    const GArc& a = g.arcs[arc];
    return a.kind != ArcKind::Source || g.head_loc(arc) == start_loc;
  }

  void make_variables() {
    const TimeExpandedDigraph& tg = graphs.truck;
    const TimeExpandedDigraph& xg = graphs.ltx;
    const int A = tg.num_arcs();
    const int AX = xg.num_arcs();
    const int V = inst.num_trucks();
    const int D = inst.num_drivers();
    const int H = inst.horizon.days;

    if (options.flavor == Flavor::LTR) {
      model.flow_var_.assign(A, -1);
      for (int a = 0; a < A; ++a) {
        VarRef var;
        var.kind = VarKind::FlowArc;
        var.index = a;
        var.lb = 0.0;
        var.ub = static_cast<double>(ltr_capacity(tg, a, inst));
        var.name = var_name(var.kind, -1, a);
        model.flow_var_[a] = model.num_vars();
        model.vars.push_back(std::move(var));
        model.obj.push_back(static_cast<double>(tg.arcs[a].weight));
      }
    } else {
      model.truck_var_.assign(static_cast<std::size_t>(V) * A, -1);
      for (int v = 0; v < V; ++v) {
        for (int a = 0; a < A; ++a) {
          if (!arc_in_agent_set(tg, a, inst.truck_start[v])) continue;
          VarRef var;
          var.kind = VarKind::TruckArc;
          var.agent = v;
          var.index = a;
          var.name = var_name(var.kind, v, a);
          model.truck_var_[static_cast<std::size_t>(v) * A + a] = model.num_vars();
          model.vars.push_back(std::move(var));
          model.obj.push_back(static_cast<double>(tg.arcs[a].weight));
        }
      }
    }

    model.driver_var_.assign(static_cast<std::size_t>(D) * AX, -1);
    for (int d = 0; d < D; ++d) {
      for (int a = 0; a < AX; ++a) {
        if (!arc_in_agent_set(xg, a, inst.driver_start[d])) continue;
        VarRef var;
        var.kind = VarKind::DriverArc;
        var.agent = d;
        var.index = a;
        var.name = var_name(var.kind, d, a);
        model.driver_var_[static_cast<std::size_t>(d) * AX + a] = model.num_vars();
        model.vars.push_back(std::move(var));
        model.obj.push_back(static_cast<double>(xg.arcs[a].weight));
      }
    }

    model.dayoff_var_.assign(static_cast<std::size_t>(D) * H, -1);
    for (int d = 0; d < D; ++d) {
      for (int j = 0; j < H; ++j) {
        VarRef var;
        var.kind = VarKind::DayOff;
        var.agent = d;
        var.index = j;
        var.name = var_name(var.kind, d, j);
        model.dayoff_var_[static_cast<std::size_t>(d) * H + j] = model.num_vars();
        model.vars.push_back(std::move(var));
        model.obj.push_back(0.0);
      }
    }
  }

  void add_row(std::string name, std::string family, RowBuilder& rb, char sense, double rhs) {
    ModelRow row;
    row.name = std::move(name);
    row.family = std::move(family);
    row.coeffs = rb.take();
    row.sense = sense;
    row.rhs = rhs;
    model.rows.push_back(std::move(row));
  }

  // Sum of truck variables over a set of truck-graph arcs (all trucks for
  // LT/LTC, the aggregated flow for LTR).
  void add_truck_sum(RowBuilder& rb, const std::vector<int>& arcs, double coeff) {
    if (options.flavor == Flavor::LTR) {
      for (int a : arcs) rb.add(model.var_flow(a), coeff);
    } else {
      for (int v = 0; v < inst.num_trucks(); ++v) {
        for (int a : arcs) {
          const int var = model.var_truck(v, a);
          if (var >= 0) rb.add(var, coeff);
        }
      }
    }
  }

  void truck_flow_rows() {
    const TimeExpandedDigraph& tg = graphs.truck;
    RowBuilder rb;
    if (options.flavor == Flavor::LTR) {
      for (int n = 0; n < tg.num_nodes(); ++n) {
        if (n == tg.source || n == tg.sink) continue;
        for (int a : tg.in_arcs[n]) rb.add(model.var_flow(a), 1.0);
        for (int a : tg.out_arcs[n]) rb.add(model.var_flow(a), -1.0);
        add_row("flow_n" + std::to_string(n), "flow_v", rb, 'E', 0.0);
      }
      return;
    }
    for (int v = 0; v < inst.num_trucks(); ++v) {
      for (int n = 0; n < tg.num_nodes(); ++n) {
        if (n == tg.source || n == tg.sink) continue;
        for (int a : tg.in_arcs[n]) {
          const int var = model.var_truck(v, a);
          if (var >= 0) rb.add(var, 1.0);
        }
        for (int a : tg.out_arcs[n]) {
          const int var = model.var_truck(v, a);
          if (var >= 0) rb.add(var, -1.0);
        }
        add_row("flow_v" + std::to_string(v) + "_n" + std::to_string(n), "flow_v", rb, 'E', 0.0);
      }
    }
  }

  void driver_flow_rows() {
    const TimeExpandedDigraph& xg = graphs.ltx;
    RowBuilder rb;
    for (int d = 0; d < inst.num_drivers(); ++d) {
      for (int n = 0; n < xg.num_nodes(); ++n) {
        if (n == xg.source || n == xg.sink) continue;
        for (int a : xg.in_arcs[n]) {
          const int var = model.var_driver(d, a);
          if (var >= 0) rb.add(var, 1.0);
        }
        for (int a : xg.out_arcs[n]) {
          const int var = model.var_driver(d, a);
          if (var >= 0) rb.add(var, -1.0);
        }
        add_row("flow_d" + std::to_string(d) + "_n" + std::to_string(n), "flow_d", rb, 'E', 0.0);
      }
    }
  }

  void pickup_once_rows() {
    RowBuilder rb;
    for (const Request& r : inst.requests) {
      add_truck_sum(rb, graphs.truck.service_arcs(ArcKind::Pickup, r.id), 1.0);
      add_row("pick_once_r" + std::to_string(r.id), "pick_once", rb, 'E', 1.0);
    }
  }

  void unpaired_rows() {
    if (options.flavor == Flavor::LTR) return;  // structural
    RowBuilder rb;
    for (int v = 0; v < inst.num_trucks(); ++v) {
      for (const Request& r : inst.requests) {
        for (int a : graphs.truck.service_arcs(ArcKind::Pickup, r.id)) {
          const int var = model.var_truck(v, a);
          if (var >= 0) rb.add(var, 1.0);
        }
        for (int a : graphs.truck.service_arcs(ArcKind::Delivery, r.id)) {
          const int var = model.var_truck(v, a);
          if (var >= 0) rb.add(var, -1.0);
        }
        add_row("unpaired_v" + std::to_string(v) + "_r" + std::to_string(r.id), "unpaired", rb,
                'E', 0.0);
      }
    }
  }

  void precedence_rows() {
    if (options.flavor == Flavor::LTR) return;  // structural
    const TimeExpandedDigraph& tg = graphs.truck;
    RowBuilder rb;
    if (options.precedence == PrecedenceOpt::Original) {
      // One row per request and delivery arc: pickups completed by the
      // delivery start dominate the delivery.
      for (const Request& r : inst.requests) {
        const auto pickups = tg.service_arcs(ArcKind::Pickup, r.id);
        for (int e : tg.service_arcs(ArcKind::Delivery, r.id)) {
          const int start = tg.tail_instant(e);
          std::vector<int> early;
          for (int p : pickups) {
            if (tg.head_instant(p) <= start) early.push_back(p);
          }
          add_truck_sum(rb, early, 1.0);
          add_truck_sum(rb, {e}, -1.0);
          add_row("prec_r" + std::to_string(r.id) + "_a" + std::to_string(e), "prec", rb, 'G',
                  0.0);
        }
      }
      return;
    }
    // PREC rows: per request and delivery-start instant.
    for (const Request& r : inst.requests) {
      const auto pickups = tg.service_arcs(ArcKind::Pickup, r.id);
      const auto deliveries = tg.service_arcs(ArcKind::Delivery, r.id);
      const std::int64_t travel = inst.truck_time.at(r.pickup_loc, r.delivery_loc);
      for (int i : service_start_instants(inst.horizon, r, Side::Delivery)) {
        std::vector<int> lhs, rhs_arcs;
        for (int p : pickups) {
          if (tg.head_instant(p) <= i - travel) lhs.push_back(p);
        }
        for (int e : deliveries) {
          if (tg.tail_instant(e) <= i) rhs_arcs.push_back(e);
        }
        add_truck_sum(rb, lhs, 1.0);
        add_truck_sum(rb, rhs_arcs, -1.0);
        add_row("PREC_r" + std::to_string(r.id) + "_i" + std::to_string(i), "prec", rb, 'G', 0.0);
      }
    }
  }

  void capacity_rows() {
    if (options.flavor != Flavor::LT) return;  // structural in LTC/LTR
    const TimeExpandedDigraph& tg = graphs.truck;
    std::vector<int> instants;
    for (const Request& r : inst.requests) {
      for (int i : service_start_instants(inst.horizon, r, Side::Pickup)) instants.push_back(i);
    }
    std::sort(instants.begin(), instants.end());
    instants.erase(std::unique(instants.begin(), instants.end()), instants.end());

    RowBuilder rb;
    for (int v = 0; v < inst.num_trucks(); ++v) {
      for (int i : instants) {
        for (const Request& r : inst.requests) {
          for (int a : tg.service_arcs(ArcKind::Pickup, r.id)) {
            if (tg.head_instant(a) <= i) rb.add(model.var_truck(v, a), 1.0);
          }
          for (int a : tg.service_arcs(ArcKind::Delivery, r.id)) {
            if (tg.head_instant(a) <= i) rb.add(model.var_truck(v, a), -1.0);
          }
        }
        add_row("cap_v" + std::to_string(v) + "_i" + std::to_string(i), "cap", rb, 'L', 1.0);
      }
    }
  }

  void daily_rest_rows() {
    const TimeExpandedDigraph& xg = graphs.ltx;
    const int I = inst.horizon.instants_per_day;
    const int H = inst.horizon.days;
    const auto rests = xg.arcs_of_kind(ArcKind::Rest);
    RowBuilder rb;
    for (int d = 0; d < inst.num_drivers(); ++d) {
      for (int i = 0; i <= I * (H - 1); ++i) {
        for (int a : rests) {
          const int t = xg.tail_instant(a);
          if (i <= t && t < i + I) rb.add(model.var_driver(d, a), 1.0);
        }
        add_row("daily_d" + std::to_string(d) + "_i" + std::to_string(i), "daily", rb, 'G',
                I / 2.0);
      }
    }
  }

  void weekly_rows() {
    const int H = inst.horizon.days;
    const int I = inst.horizon.instants_per_day;
    RowBuilder rb;
    if (H >= 7) {
      for (int d = 0; d < inst.num_drivers(); ++d) {
        for (int j = 0; j + 6 <= H - 1; ++j) {
          for (int j2 = j; j2 <= j + 6; ++j2) rb.add(model.var_dayoff(d, j2), 1.0);
          add_row("weekly1_d" + std::to_string(d) + "_j" + std::to_string(j), "weekly1", rb, 'G',
                  1.0);
        }
      }
    }
    const auto rests = graphs.ltx.arcs_of_kind(ArcKind::Rest);
    for (int d = 0; d < inst.num_drivers(); ++d) {
      for (int j = 0; j < H; ++j) {
        for (int a : rests) {
          const int t = graphs.ltx.tail_instant(a);
          if (I * j <= t && t < I * (j + 1)) rb.add(model.var_driver(d, a), 1.0);
        }
        rb.add(model.var_dayoff(d, j), -static_cast<double>(I));
        add_row("weekly2_d" + std::to_string(d) + "_j" + std::to_string(j), "weekly2", rb, 'G',
                0.0);
      }
    }
  }

  void sync_rows() {
    const TimeExpandedDigraph& xg = graphs.ltx;
    RowBuilder rb;
    for (int e = 0; e < xg.num_arcs(); ++e) {
      const ArcKind k = xg.arcs[e].kind;
      if (k != ArcKind::Trip && k != ArcKind::Pickup && k != ArcKind::Delivery) continue;
      const bool service = (k != ArcKind::Trip);
      const std::vector<int>& truck_arcs = graphs.sync_arcs[e];
      const std::string tag = "_a" + std::to_string(e);

      auto driver_sum = [&](double coeff) {
        for (int d = 0; d < inst.num_drivers(); ++d) {
          const int var = model.var_driver(d, e);
          if (var >= 0) rb.add(var, coeff);
        }
      };

      if (service && options.sync == SyncOpt::Sync1) {
        driver_sum(1.0);
        add_truck_sum(rb, truck_arcs, -1.0);
        add_row("sync_eq" + tag, "sync", rb, 'E', 0.0);
        continue;
      }
      // Lower side: drivers aboard >= trucks on the arc.
      driver_sum(1.0);
      add_truck_sum(rb, truck_arcs, -1.0);
      add_row("sync_lo" + tag, "sync", rb, 'G', 0.0);
      if (service && options.sync == SyncOpt::Sync2) continue;
      // Upper side: at most two drivers per truck.
      driver_sum(1.0);
      add_truck_sum(rb, truck_arcs, -2.0);
      add_row("sync_up" + tag, "sync", rb, 'L', 0.0);
    }
  }

  MilpModel build() {
    model.options = options;
    model.graphs = &graphs;
    make_variables();
    truck_flow_rows();
    driver_flow_rows();
    pickup_once_rows();
    unpaired_rows();
    precedence_rows();
    capacity_rows();
    daily_rest_rows();
    weekly_rows();
    sync_rows();
    return std::move(model);
  }
};

}  // namespace

int MilpModel::var_truck(int v, int arc) const {
  if (truck_var_.empty()) return -1;
  const int A = graphs->truck.num_arcs();
  return truck_var_[static_cast<std::size_t>(v) * A + arc];
}

int MilpModel::var_flow(int arc) const {
  return flow_var_.empty() ? -1 : flow_var_[arc];
}

int MilpModel::var_driver(int d, int arc) const {
  const int A = graphs->ltx.num_arcs();
  return driver_var_[static_cast<std::size_t>(d) * A + arc];
}

int MilpModel::var_dayoff(int d, int day) const {
  return dayoff_var_[static_cast<std::size_t>(d) * graphs->inst->horizon.days + day];
}

MilpModel build_model(const Instance& inst, const GraphBundle& graphs,
                      const BuildOptions& options) {
  if (options.flavor == Flavor::LTX) throw std::invalid_argument("build_model: LTX is not a truck flavor");
  if (graphs.truck.flavor != options.flavor)
    throw std::invalid_argument("build_model: graph bundle flavor mismatch");
  BuildOptions opts = options;
  if (opts.flavor == Flavor::LTR && opts.precedence == PrecedenceOpt::Prec) {
    // Precedence is structural under LTR; the option has no effect.
    opts.precedence = PrecedenceOpt::Original;
  }
  Builder b{inst, graphs, opts, {}};
  return b.build();
}

MilpModel lp_relaxation(const MilpModel& model) {
  MilpModel relaxed = model;
  for (VarRef& v : relaxed.vars) v.integral = false;
  return relaxed;
}

StandardLp to_standard_lp(const MilpModel& model) {
  StandardLp lp;
  lp.num_vars = model.num_vars();
  lp.obj = model.obj;
  lp.lb.resize(lp.num_vars);
  lp.ub.resize(lp.num_vars);
  for (int j = 0; j < lp.num_vars; ++j) {
    lp.lb[j] = model.vars[j].lb;
    lp.ub[j] = model.vars[j].ub;
  }
  for (const ModelRow& row : model.rows) lp.add_row(row.coeffs, row.sense, row.rhs);
  return lp;
}

std::string check_assignment(const MilpModel& model, const std::vector<double>& x, double tol) {
  if (static_cast<int>(x.size()) != model.num_vars()) return "dimension mismatch";
  for (int j = 0; j < model.num_vars(); ++j) {
    if (x[j] < model.vars[j].lb - tol || x[j] > model.vars[j].ub + tol)
      return "bound " + model.vars[j].name;
  }
  for (const ModelRow& row : model.rows) {
    double lhs = 0.0;
    for (auto [j, c] : row.coeffs) lhs += c * x[j];
    const bool ok = (row.sense == 'L')   ? lhs <= row.rhs + tol
                    : (row.sense == 'G') ? lhs >= row.rhs - tol
                                         : std::fabs(lhs - row.rhs) <= tol;
    if (!ok) return row.name;
  }
  return {};
}

std::vector<double> warm_start_assignment(const Plan& plan, const MilpModel& model) {
  const GraphBundle& graphs = *model.graphs;
  const Instance& inst = *graphs.inst;
  std::vector<double> x(model.num_vars(), 0.0);

  if (static_cast<int>(plan.trucks.size()) != inst.num_trucks() ||
      static_cast<int>(plan.drivers.size()) != inst.num_drivers())
    throw std::runtime_error("warm start: plan agent counts do not match the instance");

  for (int v = 0; v < inst.num_trucks(); ++v) {
    for (int a : plan.trucks[v].arcs) {
      const int var =
          (model.options.flavor == Flavor::LTR) ? model.var_flow(a) : model.var_truck(v, a);
      if (var < 0) throw std::runtime_error("warm start: truck route uses an unavailable arc");
      x[var] += 1.0;
    }
  }
  for (int d = 0; d < inst.num_drivers(); ++d) {
    for (int a : plan.drivers[d].arcs) {
      const int var = model.var_driver(d, a);
      if (var < 0) throw std::runtime_error("warm start: driver route uses an unavailable arc");
      x[var] += 1.0;
    }
    for (int j = 0; j < inst.horizon.days; ++j) {
      if (d < static_cast<int>(plan.day_off.size()) && j < static_cast<int>(plan.day_off[d].size()) &&
          plan.day_off[d][j])
        x[model.var_dayoff(d, j)] = 1.0;
    }
  }

  const std::string violated = check_assignment(model, x);
  if (!violated.empty()) throw std::runtime_error("warm start violates " + violated);
  return x;
}

namespace {

// Follows the unit flow of one agent from source to sink.
std::vector<int> walk_path(const TimeExpandedDigraph& g, const std::vector<int>& used_arcs) {
  if (used_arcs.empty()) return {};
  std::unordered_map<int, int> next;  // tail node -> arc
  for (int a : used_arcs) {
    if (!next.emplace(g.arcs[a].tail, a).second)
      throw std::runtime_error("solution_to_plan: node with two outgoing used arcs");
  }
  std::vector<int> path;
  int cur = g.source;
  while (cur != g.sink) {
    auto it = next.find(cur);
    if (it == next.end()) throw std::runtime_error("solution_to_plan: broken path");
    path.push_back(it->second);
    cur = g.arcs[it->second].head;
    if (path.size() > used_arcs.size()) throw std::runtime_error("solution_to_plan: cyclic flow");
  }
  if (path.size() != used_arcs.size())
    throw std::runtime_error("solution_to_plan: disconnected flow");
  return path;
}

}  // namespace

Plan solution_to_plan(const MilpModel& model, const std::vector<double>& values) {
  const GraphBundle& graphs = *model.graphs;
  const Instance& inst = *graphs.inst;
  if (static_cast<int>(values.size()) != model.num_vars())
    throw std::invalid_argument("solution_to_plan: dimension mismatch");
  for (int j = 0; j < model.num_vars(); ++j) {
    if (std::fabs(values[j] - std::round(values[j])) > 1e-6)
      throw std::invalid_argument("solution_to_plan: non-integral value for " +
                                  model.vars[j].name);
  }
  const std::string violated = check_assignment(model, values);
  if (!violated.empty())
    throw std::invalid_argument("solution_to_plan: infeasible values, violates " + violated);

  Plan plan;
  plan.trucks.resize(inst.num_trucks());
  plan.drivers.resize(inst.num_drivers());
  plan.day_off.assign(inst.num_drivers(), std::vector<std::uint8_t>(inst.horizon.days, 0));

  if (model.options.flavor == Flavor::LTR) {
    std::vector<std::int64_t> flow(graphs.truck.num_arcs(), 0);
    for (int a = 0; a < graphs.truck.num_arcs(); ++a) {
      flow[a] = static_cast<std::int64_t>(std::llround(values[model.var_flow(a)]));
    }
    plan.trucks = decompose_flow(graphs.truck, flow, inst);
  } else {
    for (int v = 0; v < inst.num_trucks(); ++v) {
      std::vector<int> used;
      for (int a = 0; a < graphs.truck.num_arcs(); ++a) {
        const int var = model.var_truck(v, a);
        if (var >= 0 && values[var] > 0.5) used.push_back(a);
      }
      plan.trucks[v].agent = v;
      plan.trucks[v].arcs = walk_path(graphs.truck, used);
    }
  }

  for (int d = 0; d < inst.num_drivers(); ++d) {
    std::vector<int> used;
    for (int a = 0; a < graphs.ltx.num_arcs(); ++a) {
      const int var = model.var_driver(d, a);
      if (var >= 0 && values[var] > 0.5) used.push_back(a);
    }
    plan.drivers[d].agent = d;
    plan.drivers[d].arcs = walk_path(graphs.ltx, used);
    for (int j = 0; j < inst.horizon.days; ++j) {
      plan.day_off[d][j] = values[model.var_dayoff(d, j)] > 0.5 ? 1 : 0;
    }
  }

  const auto problems = check_plan(plan, graphs);
  if (!problems.empty())
    throw std::runtime_error("solution_to_plan: extracted plan fails checks: " + problems.front());
  return plan;
}

}  // namespace svrcsp
