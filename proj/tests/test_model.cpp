#include <algorithm>
#include <cmath>
#include <string>

#include "doctest.h"
#include "support/example1.hpp"
#include "support/make_route.hpp"
#include "svrcsp/generate.hpp"
#include "svrcsp/model.hpp"

using namespace svrcsp;
using testing::Act;
using testing::make_route;

namespace {

int family_count(const MilpModel& m, const std::string& family) {
  return static_cast<int>(std::count_if(m.rows.begin(), m.rows.end(), [&](const ModelRow& r) {
    return r.family == family;
  }));
}

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

double relax_value(const MilpModel& model) {
  const LpOutcome out = solve_lp(to_standard_lp(lp_relaxation(model)));
  REQUIRE(out.status == LpStatus::Optimal);
  return out.objective;
}

}  // namespace

TEST_CASE("row family counts on the reference instance") {
  const Instance inst = testing::example1();
  const GraphBundle b = build_bundle(inst, Flavor::LT);
  const MilpModel m = build_model(inst, b, {Flavor::LT});
  CHECK(family_count(m, "pick_once") == 2);   // one per request
  CHECK(family_count(m, "daily") == 2);       // one window start, two drivers
  CHECK(family_count(m, "unpaired") == 4);    // per (truck, request)
  CHECK(family_count(m, "prec") == 5 + 3);    // per delivery arc
  CHECK(family_count(m, "cap") == 2 * 6);     // per (truck, pickup start instant)
  CHECK(family_count(m, "weekly1") == 0);     // needs H >= 7
  CHECK(family_count(m, "weekly2") == 2);     // per (driver, day)
  // Two-sided sync: two rows per driver trip/service arc.
  CHECK(family_count(m, "sync") == 2 * (16 + 3 + 3 + 5 + 3));
  // Truck flow: per truck and located node; same for drivers.
  CHECK(family_count(m, "flow_v") == 2 * 18);
  CHECK(family_count(m, "flow_d") == 2 * 18);
}

TEST_CASE("sync option changes service rows only") {
  const Instance inst = testing::example1();
  const GraphBundle b = build_bundle(inst, Flavor::LT);
  const MilpModel two = build_model(inst, b, {Flavor::LT, PrecedenceOpt::Original, SyncOpt::TwoSided});
  const MilpModel s1 = build_model(inst, b, {Flavor::LT, PrecedenceOpt::Original, SyncOpt::Sync1});
  const MilpModel s2 = build_model(inst, b, {Flavor::LT, PrecedenceOpt::Original, SyncOpt::Sync2});
  // 14 service arcs: equality collapses two rows into one; lower-bound-only
  // drops one.
  CHECK(family_count(two, "sync") == family_count(s1, "sync") + 14);
  CHECK(family_count(two, "sync") == family_count(s2, "sync") + 14);
}

TEST_CASE("warm start round trip") {
  const Instance inst = testing::example1();
  for (Flavor f : {Flavor::LT, Flavor::LTC, Flavor::LTR}) {
    CAPTURE(flavor_name(f));
    const GraphBundle b = build_bundle(inst, f);
    const MilpModel m = build_model(inst, b, {f});
    const Plan plan = reference_plan(b);
    const std::vector<double> x = warm_start_assignment(plan, m);
    CHECK(check_assignment(m, x).empty());

    double value = 0.0;
    for (int j = 0; j < m.num_vars(); ++j) value += m.obj[j] * x[j];
    CHECK(value == doctest::Approx(2.0));

    const Plan back = solution_to_plan(m, x);
    CHECK(check_plan(back, b).empty());
    CHECK(plan_cost(back, b).total() == 2);
  }
}

TEST_CASE("infeasible plans are rejected with a row name") {
  const Instance inst = testing::example1();
  const GraphBundle b = build_bundle(inst, Flavor::LT);
  const MilpModel m = build_model(inst, b, {Flavor::LT});
  Plan plan = reference_plan(b);
  plan.drivers[1].arcs.clear();  // leaves truck arcs uncovered
  CHECK_THROWS_AS(warm_start_assignment(plan, m), std::runtime_error);
}

TEST_CASE("relaxation bounds the optimum from below") {
  const Instance inst = testing::example1();
  for (Flavor f : {Flavor::LT, Flavor::LTC, Flavor::LTR}) {
    CAPTURE(flavor_name(f));
    const GraphBundle b = build_bundle(inst, f);
    const double lr = relax_value(build_model(inst, b, {f}));
    CHECK(lr >= -1e-9);
    CHECK(lr <= 2.0 + 1e-9);
  }
}

TEST_CASE("tightened precedence never weakens the relaxation") {
  const Instance inst = testing::example1();
  for (Flavor f : {Flavor::LT, Flavor::LTC}) {
    CAPTURE(flavor_name(f));
    const GraphBundle b = build_bundle(inst, f);
    const double base = relax_value(build_model(inst, b, {f, PrecedenceOpt::Original}));
    const double prec = relax_value(build_model(inst, b, {f, PrecedenceOpt::Prec}));
    CHECK(prec >= base - 1e-6);
  }
}

TEST_CASE("variable and constraint counts grow along the flavor chain") {
  // Qualitative size ordering on generated instances.
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    GenSpec spec = preset("desk");
    spec.seed = seed;
    const Instance inst = generate(spec);
    int prev_vars = -1, prev_rows = -1;
    for (Flavor f : {Flavor::LT, Flavor::LTC, Flavor::LTR}) {
      const GraphBundle b = build_bundle(inst, f);
      const MilpModel m = build_model(inst, b, {f});
      CAPTURE(flavor_name(f));
      CHECK(m.num_vars() > prev_vars);
      CHECK(static_cast<int>(m.rows.size()) > prev_rows);
      prev_vars = m.num_vars();
      prev_rows = static_cast<int>(m.rows.size());
    }
  }
}

TEST_CASE("flow variables carry arc capacities") {
  const Instance inst = testing::example1();
  const GraphBundle b = build_bundle(inst, Flavor::LTR);
  const MilpModel m = build_model(inst, b, {Flavor::LTR});
  for (int j = 0; j < m.num_vars(); ++j) {
    if (m.vars[j].kind != VarKind::FlowArc) continue;
    CHECK(m.vars[j].ub == doctest::Approx(
        static_cast<double>(ltr_capacity(b.truck, m.vars[j].index, inst))));
  }
}
