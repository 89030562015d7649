#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "svrcsp/cuts.hpp"
#include "svrcsp/model.hpp"

namespace svrcsp {

struct SolverConfig {
  double time_limit_s = 600.0;
  long node_limit = 1000000;
  double abs_gap = 1e-9;
  double rel_gap = 1e-6;
  int root_cut_rounds = 20;
  int cuts_per_round = 50;
  bool per_node_cuts = false;
  double int_tol = 1e-6;
  double cut_violation_tol = 1e-6;
  std::ostream* log = nullptr;  // progress lines when set
};

enum class SolveStatus { Optimal, Feasible, Infeasible, LimitReached };

const char* solve_status_name(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::LimitReached;
  std::vector<double> incumbent;  // empty when none found
  double objective = 0.0;         // valid when incumbent nonempty
  double best_bound = 0.0;
  double root_bound = 0.0;  // after root cuts
  double rel_gap = 0.0;
  long nodes = 0;
  int cuts_added = 0;
  std::vector<std::pair<std::string, int>> cuts_per_family;
  double wall_time_s = 0.0;
};

// Branch-and-cut over the model.  `pool` may be null (pure branch-and-
// bound); `warm` may be null.  A non-null warm start must be feasible.
SolveResult solve_milp(const MilpModel& model, const CutPool* pool,
                       const std::vector<double>* warm, const SolverConfig& config);

}  // namespace svrcsp
