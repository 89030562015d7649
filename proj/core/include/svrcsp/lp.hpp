#pragma once

#include <cstdint>
#include <vector>

namespace svrcsp {

// Minimisation LP with finite variable bounds and <=, =, >= rows.
struct StandardLp {
  int num_vars = 0;
  std::vector<double> obj;
  std::vector<double> lb;
  std::vector<double> ub;
  std::vector<std::vector<std::pair<int, double>>> rows;  // sparse, sorted by column
  std::vector<char> senses;                               // 'L', 'E', 'G'
  std::vector<double> rhs;

  int num_rows() const { return static_cast<int>(rows.size()); }
  void add_row(std::vector<std::pair<int, double>> row, char sense, double r);
};

enum class LpStatus { Optimal, Infeasible, IterationLimit };

struct LpOutcome {
  LpStatus status = LpStatus::IterationLimit;
  std::vector<double> x;
  double objective = 0.0;
  std::vector<double> duals;     // one per row
  double dual_objective = 0.0;
  long iterations = 0;
};

struct LpOptions {
  long max_iterations = 200000;
  // Degenerate pivots tolerated before switching to Bland's rule.
  long bland_threshold = 1000;
  double feas_tol = 1e-7;
  double opt_tol = 1e-9;
  double zero_tol = 1e-11;
};

LpOutcome solve_lp(const StandardLp& lp, const LpOptions& opts = {});

}  // namespace svrcsp
