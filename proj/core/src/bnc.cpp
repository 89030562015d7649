#include "svrcsp/bnc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace svrcsp {

const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::LimitReached: return "limit";
  }
  return "?";
}

namespace {

struct Node {
  int parent = -1;
  int var = -1;  // branching override, absent for the root
  double lb = 0.0;
  double ub = 0.0;
  double bound = 0.0;  // parent relaxation value
  long id = 0;
};

struct Clock {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

}  // namespace

SolveResult solve_milp(const MilpModel& model, const CutPool* pool,
                       const std::vector<double>* warm, const SolverConfig& config) {
  Clock clock;
  SolveResult res;
  StandardLp lp = to_standard_lp(model);
  const std::vector<double> base_lb = lp.lb, base_ub = lp.ub;
  std::map<std::string, int> family_counts;

  const double kInf = std::numeric_limits<double>::infinity();
  double inc_obj = kInf;
  std::vector<double> inc;

  if (warm) {
    const std::string bad = check_assignment(model, *warm, config.int_tol);
    if (!bad.empty()) throw std::invalid_argument("solve_milp: warm start violates " + bad);
    inc = *warm;
    inc_obj = 0.0;
    for (int j = 0; j < model.num_vars(); ++j) inc_obj += model.obj[j] * inc[j];
  }

  // Values are clamped to the active bounds first: the LP feasibility
  // tolerance may leave x marginally outside them, and branching on such a
  // value would create an empty child domain.
  auto clamped = [&](const std::vector<double>& x, int j) {
    return std::min(std::max(x[j], lp.lb[j]), lp.ub[j]);
  };
  auto fractional_var = [&](const std::vector<double>& x) {
    int best = -1;
    double best_frac = config.int_tol;
    for (int j = 0; j < model.num_vars(); ++j) {
      if (!model.vars[j].integral) continue;
      const double xv = clamped(x, j);
      const double f = std::fabs(xv - std::round(xv));
      if (f > best_frac) {
        best_frac = f;
        best = j;
      }
    }
    return best;
  };

  auto log_line = [&](long node, double bound) {
    if (!config.log) return;
    const double gap = inc_obj < kInf
                           ? (inc_obj - bound) / std::max(1.0, std::fabs(inc_obj))
                           : kInf;
    *config.log << "node=" << node << " bound=" << bound
                << " inc=" << (inc_obj < kInf ? std::to_string(inc_obj) : "none")
                << " gap=" << gap << " cuts=" << res.cuts_added << "\n";
  };

  auto add_cuts = [&](const std::vector<double>& x) {
    if (!pool) return 0;
    const auto violated = separate(*pool, x, config.cut_violation_tol, config.cuts_per_round);
    for (const Cut& c : violated) {
      lp.add_row(c.coeffs, c.sense, c.rhs);
      ++res.cuts_added;
      ++family_counts[cut_family_name(c.family)];
    }
    return static_cast<int>(violated.size());
  };

  auto finish = [&](SolveStatus status, double bound) {
    res.status = status;
    res.incumbent = inc;
    res.objective = inc_obj < kInf ? inc_obj : 0.0;
    res.best_bound = bound;
    res.rel_gap = inc_obj < kInf && bound > -kInf
                      ? (inc_obj - bound) / std::max(1.0, std::fabs(inc_obj))
                      : kInf;
    if (status == SolveStatus::Optimal) res.rel_gap = 0.0;
    res.wall_time_s = clock.seconds();
    for (auto& [name, n] : family_counts) res.cuts_per_family.push_back({name, n});
    return res;
  };

  // Root relaxation.
  LpOutcome root = solve_lp(lp);
  if (root.status == LpStatus::Infeasible) return finish(SolveStatus::Infeasible, kInf);
  if (root.status == LpStatus::IterationLimit)
    throw std::runtime_error("solve_milp: root LP hit the iteration limit");
  res.root_bound = root.objective;

  if (config.node_limit <= 0 || clock.seconds() > config.time_limit_s) {
    return finish(inc_obj < kInf ? SolveStatus::Feasible : SolveStatus::LimitReached,
                  root.objective);
  }

  // Root cut loop.
  for (int round = 0; round < config.root_cut_rounds; ++round) {
    if (fractional_var(root.x) < 0) break;  // integral, cuts cannot help
    if (add_cuts(root.x) == 0) break;
    root = solve_lp(lp);
    if (root.status == LpStatus::Infeasible) return finish(SolveStatus::Infeasible, kInf);
    if (root.status == LpStatus::IterationLimit)
      throw std::runtime_error("solve_milp: root LP hit the iteration limit");
    res.root_bound = root.objective;
    if (clock.seconds() > config.time_limit_s)
      return finish(SolveStatus::LimitReached, root.objective);
  }

  std::vector<Node> nodes;
  nodes.push_back(Node{-1, -1, 0.0, 0.0, root.objective, 0});
  // Best bound first; among equal bounds, newest node first (plunges into
  // fresh children after a branching).
  auto cmp = [&nodes](int a, int b) {
    if (nodes[a].bound != nodes[b].bound) return nodes[a].bound > nodes[b].bound;
    return nodes[a].id < nodes[b].id;
  };
  std::priority_queue<int, std::vector<int>, decltype(cmp)> open(cmp);
  open.push(0);
  long processed = 0;
  long next_id = 1;

  SolveStatus limit_status = SolveStatus::LimitReached;
  while (!open.empty()) {
    double best_open = nodes[open.top()].bound;
    double bound = inc_obj < kInf ? std::min(best_open, inc_obj) : best_open;
    if (inc_obj < kInf) {
      const double gap = (inc_obj - bound) / std::max(1.0, std::fabs(inc_obj));
      if (inc_obj - bound <= config.abs_gap || gap <= config.rel_gap)
        return finish(SolveStatus::Optimal, inc_obj);
    }
    if (processed >= config.node_limit || clock.seconds() > config.time_limit_s) {
      limit_status = inc_obj < kInf ? SolveStatus::Feasible : SolveStatus::LimitReached;
      return finish(limit_status, bound);
    }

    const int ni = open.top();
    open.pop();
    if (nodes[ni].bound >= inc_obj - config.abs_gap) continue;  // pruned by bound

    // Apply the ancestor bound overrides.
    lp.lb = base_lb;
    lp.ub = base_ub;
    for (int a = ni; a >= 0; a = nodes[a].parent) {
      if (nodes[a].var < 0) continue;
      lp.lb[nodes[a].var] = std::max(lp.lb[nodes[a].var], nodes[a].lb);
      lp.ub[nodes[a].var] = std::min(lp.ub[nodes[a].var], nodes[a].ub);
    }
    ++processed;
    res.nodes = processed;

    LpOutcome out = solve_lp(lp);
    if (out.status == LpStatus::Infeasible) continue;
    if (out.status == LpStatus::IterationLimit)
      throw std::runtime_error("solve_milp: node LP hit the iteration limit");
    double value = out.objective;
    if (value >= inc_obj - config.abs_gap) continue;

    if (config.per_node_cuts) {
      for (int round = 0; round < config.root_cut_rounds; ++round) {
        if (fractional_var(out.x) < 0) break;
        if (add_cuts(out.x) == 0) break;
        out = solve_lp(lp);
        if (out.status != LpStatus::Optimal) break;
        value = out.objective;
      }
      if (out.status == LpStatus::Infeasible) continue;
      if (value >= inc_obj - config.abs_gap) continue;
    }

    const int branch = fractional_var(out.x);
    log_line(processed, value);
    if (branch < 0) {
      // Integral: new incumbent.
      if (value < inc_obj - config.abs_gap) {
        inc = out.x;
        for (int j = 0; j < model.num_vars(); ++j) {
          if (model.vars[j].integral) inc[j] = std::round(inc[j]);
        }
        inc_obj = 0.0;
        for (int j = 0; j < model.num_vars(); ++j) inc_obj += model.obj[j] * inc[j];
      }
      continue;
    }

    const double v = clamped(out.x, branch);
    Node down{ni, branch, base_lb[branch], std::floor(v), value, next_id++};
    Node up{ni, branch, std::ceil(v), base_ub[branch], value, next_id++};
    nodes.push_back(down);
    open.push(static_cast<int>(nodes.size()) - 1);
    nodes.push_back(up);
    open.push(static_cast<int>(nodes.size()) - 1);
  }

  if (inc_obj < kInf) return finish(SolveStatus::Optimal, inc_obj);
  return finish(SolveStatus::Infeasible, kInf);
}

}  // namespace svrcsp
