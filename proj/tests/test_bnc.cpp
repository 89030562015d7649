#include <cmath>
#include <sstream>

#include "doctest.h"
#include "support/example1.hpp"
#include "support/make_route.hpp"
#include "svrcsp/bnc.hpp"

using namespace svrcsp;
using testing::Act;
using testing::make_route;

namespace {

Plan reference_plan(const GraphBundle& b) {
  Plan plan;
  plan.trucks.resize(2);
  plan.trucks[0] = make_route(b.truck, 0,
                              {Act{ArcKind::Pickup, 0, 0, 0}, Act{ArcKind::Trip, 1, 1},
                               Act{ArcKind::Delivery, 1, 2, 0}, Act{ArcKind::Pickup, 1, 3, 1},
                               Act{ArcKind::Trip, 0, 4}, Act{ArcKind::Delivery, 0, 5, 1}});
  plan.trucks[0].agent = 0;
  plan.trucks[1].agent = 1;
  plan.drivers.resize(2);
  plan.drivers[0] = make_route(b.ltx, 0,
                               {Act{ArcKind::Pickup, 0, 0, 0}, Act{ArcKind::Trip, 1, 1},
                                Act{ArcKind::Delivery, 1, 2, 0}});
  plan.drivers[0].agent = 0;
  plan.drivers[1] = make_route(b.ltx, 1,
                               {Act{ArcKind::Pickup, 1, 3, 1}, Act{ArcKind::Trip, 0, 4},
                                Act{ArcKind::Delivery, 0, 5, 1}});
  plan.drivers[1].agent = 1;
  plan.day_off = {{0}, {0}};
  return plan;
}

}  // namespace

TEST_CASE("every flavor and sync option reaches the reference optimum") {
  const Instance inst = testing::example1();
  for (Flavor f : {Flavor::LT, Flavor::LTC, Flavor::LTR}) {
    const GraphBundle b = build_bundle(inst, f);
    for (SyncOpt sync : {SyncOpt::TwoSided, SyncOpt::Sync1, SyncOpt::Sync2}) {
      CAPTURE(flavor_name(f));
      CAPTURE(static_cast<int>(sync));
      const MilpModel m = build_model(inst, b, {f, PrecedenceOpt::Original, sync});
      const SolveResult res = solve_milp(m, nullptr, nullptr, {});
      REQUIRE(res.status == SolveStatus::Optimal);
      CHECK(res.objective == doctest::Approx(2.0));
      CHECK(res.best_bound == doctest::Approx(2.0).epsilon(1e-5));
      if (sync != SyncOpt::Sync2) {
        // Sync2 keeps only the lower synchronization side on service arcs, so
        // its optima may ferry an idle driver; only the value is preserved.
        const Plan plan = solution_to_plan(m, res.incumbent);
        CHECK(check_plan(plan, b).empty());
        CHECK(plan_cost(plan, b).total() == 2);
      }
    }
  }
}

TEST_CASE("tightened precedence solves to the same optimum") {
  const Instance inst = testing::example1();
  for (Flavor f : {Flavor::LT, Flavor::LTC}) {
    CAPTURE(flavor_name(f));
    const GraphBundle b = build_bundle(inst, f);
    const MilpModel m = build_model(inst, b, {f, PrecedenceOpt::Prec});
    const SolveResult res = solve_milp(m, nullptr, nullptr, {});
    REQUIRE(res.status == SolveStatus::Optimal);
    CHECK(res.objective == doctest::Approx(2.0));
  }
}

TEST_CASE("cut pool does not change the optimum") {
  const Instance inst = testing::example1();
  const GraphBundle b = build_bundle(inst, Flavor::LT);
  const MilpModel m = build_model(inst, b, {Flavor::LT});
  CutPool pool;
  pool.add_all(gen_all(m));
  const SolveResult plain = solve_milp(m, nullptr, nullptr, {});
  const SolveResult cut = solve_milp(m, &pool, nullptr, {});
  REQUIRE(plain.status == SolveStatus::Optimal);
  REQUIRE(cut.status == SolveStatus::Optimal);
  CHECK(plain.objective == doctest::Approx(cut.objective));
  // Cuts may only pull the root bound up.
  CHECK(cut.root_bound >= plain.root_bound - 1e-6);
}

TEST_CASE("warm starts are honored and never abandoned for worse") {
  const Instance inst = testing::example1();
  const GraphBundle b = build_bundle(inst, Flavor::LT);
  const MilpModel m = build_model(inst, b, {Flavor::LT});
  const std::vector<double> warm = warm_start_assignment(reference_plan(b), m);
  const SolveResult res = solve_milp(m, nullptr, &warm, {});
  REQUIRE(res.status == SolveStatus::Optimal);
  CHECK(res.objective == doctest::Approx(2.0));

  // With a zero node limit the warm start is still the incumbent.
  SolverConfig limited;
  limited.node_limit = 0;
  const SolveResult stub = solve_milp(m, nullptr, &warm, limited);
  CHECK(stub.status == SolveStatus::Feasible);
  CHECK(stub.objective == doctest::Approx(2.0));
  CHECK(stub.best_bound <= 2.0 + 1e-6);
}

TEST_CASE("zero node limit reports the plain root bound") {
  const Instance inst = testing::example1();
  const GraphBundle b = build_bundle(inst, Flavor::LT);
  const MilpModel m = build_model(inst, b, {Flavor::LT});
  SolverConfig limited;
  limited.node_limit = 0;
  const SolveResult res = solve_milp(m, nullptr, nullptr, limited);
  CHECK(res.status == SolveStatus::LimitReached);
  CHECK(res.incumbent.empty());

  const LpOutcome root = solve_lp(to_standard_lp(lp_relaxation(m)));
  REQUIRE(root.status == LpStatus::Optimal);
  CHECK(res.best_bound == doctest::Approx(root.objective));
}

TEST_CASE("infeasible models are certified") {
  Instance inst = testing::example1();
  inst.requests[0].delivery_open = 0;
  inst.requests[0].delivery_close = 0;  // unreachable window
  const GraphBundle b = build_bundle(inst, Flavor::LT);
  const MilpModel m = build_model(inst, b, {Flavor::LT});
  const SolveResult res = solve_milp(m, nullptr, nullptr, {});
  CHECK(res.status == SolveStatus::Infeasible);
}

TEST_CASE("progress lines appear on the log stream") {
  const Instance inst = testing::example1();
  const GraphBundle b = build_bundle(inst, Flavor::LT);
  const MilpModel m = build_model(inst, b, {Flavor::LT});
  std::ostringstream log;
  SolverConfig cfg;
  cfg.log = &log;
  solve_milp(m, nullptr, nullptr, cfg);
  CHECK(log.str().find("node=") != std::string::npos);
  CHECK(log.str().find("bound=") != std::string::npos);
}
