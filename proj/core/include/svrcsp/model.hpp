#pragma once

#include <string>
#include <vector>

#include "svrcsp/lp.hpp"
#include "svrcsp/routes.hpp"
#include "svrcsp/timegraph.hpp"

namespace svrcsp {

enum class VarKind : int {
  TruckArc = 0,  // X_v{v}_a{arc} (LT/LTC)
  FlowArc = 1,   // X_a{arc} (LTR, integer up to cap)
  DriverArc = 2, // Y_d{d}_a{arc}
  DayOff = 3,    // W_d{d}_j{j}
};

struct VarRef {
  VarKind kind = VarKind::TruckArc;
  int agent = -1;  // truck or driver id; -1 for FlowArc
  int index = -1;  // arc id, or day for DayOff
  double lb = 0.0;
  double ub = 1.0;
  bool integral = true;
  std::string name;
};

enum class PrecedenceOpt { Original, Prec };
enum class SyncOpt { TwoSided, Sync1, Sync2 };

struct BuildOptions {
  Flavor flavor = Flavor::LT;
  PrecedenceOpt precedence = PrecedenceOpt::Original;
  SyncOpt sync = SyncOpt::TwoSided;
};

struct ModelRow {
  std::string name;
  std::string family;
  std::vector<std::pair<int, double>> coeffs;  // sorted, no duplicates
  char sense = 'E';                            // 'L', 'E', 'G'
  double rhs = 0.0;
};

struct MilpModel {
  BuildOptions options;
  const GraphBundle* graphs = nullptr;
  std::vector<VarRef> vars;
  std::vector<double> obj;
  std::vector<ModelRow> rows;

  int num_vars() const { return static_cast<int>(vars.size()); }

  // Variable lookups; -1 when the variable does not exist.
  int var_truck(int v, int arc) const;
  int var_flow(int arc) const;
  int var_driver(int d, int arc) const;
  int var_dayoff(int d, int day) const;

  // Index tables, filled by build_model.
  std::vector<int> truck_var_;   // [v * truck arcs + arc]
  std::vector<int> flow_var_;    // [arc]
  std::vector<int> driver_var_;  // [d * ltx arcs + arc]
  std::vector<int> dayoff_var_;  // [d * H + j]
};

MilpModel build_model(const Instance& inst, const GraphBundle& graphs,
                      const BuildOptions& options);

// Same rows and bounds with all integrality flags cleared.
MilpModel lp_relaxation(const MilpModel& model);

StandardLp to_standard_lp(const MilpModel& model);

// Name of the first violated row (or bound), empty if feasible.
std::string check_assignment(const MilpModel& model, const std::vector<double>& x,
                             double tol = 1e-6);

// Translates a feasible plan into variable values.  Throws std::runtime_error
// naming the violated constraint if the plan does not satisfy the model.
std::vector<double> warm_start_assignment(const Plan& plan, const MilpModel& model);

// Translates integral feasible values back into a plan.  Throws on
// non-integral or infeasible input.
Plan solution_to_plan(const MilpModel& model, const std::vector<double>& values);

}  // namespace svrcsp
