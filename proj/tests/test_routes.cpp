#include <algorithm>
#include <string>

#include "doctest.h"
#include "support/example1.hpp"
#include "support/make_route.hpp"
#include "svrcsp/routes.hpp"

using namespace svrcsp;
using testing::Act;
using testing::make_route;

namespace {

bool mentions(const std::vector<std::string>& msgs, const std::string& needle) {
  return std::any_of(msgs.begin(), msgs.end(),
                     [&](const std::string& m) { return m.find(needle) != std::string::npos; });
}

// The two-driver relay that attains the optimum of the reference instance.
Plan reference_plan(const GraphBundle& b) {
  Plan plan;
  plan.trucks.resize(2);
  plan.trucks[0] = make_route(b.truck, 0,
                              {Act{ArcKind::Pickup, 0, 0, 0}, Act{ArcKind::Trip, 1, 1},
                               Act{ArcKind::Delivery, 1, 2, 0}, Act{ArcKind::Pickup, 1, 3, 1},
                               Act{ArcKind::Trip, 0, 4}, Act{ArcKind::Delivery, 0, 5, 1}});
  plan.trucks[0].agent = 0;
  plan.trucks[1].agent = 1;  // unused
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

TEST_CASE("directed path recognition") {
  const Instance inst = testing::example1();
  const TimeExpandedDigraph g = build_lt(inst);
  Route r = make_route(g, 0, {});
  CHECK(is_directed_path(g, r.arcs));
  CHECK(is_directed_path(g, {}));
  std::swap(r.arcs[1], r.arcs[2]);
  CHECK_FALSE(is_directed_path(g, r.arcs));
  CHECK_FALSE(is_directed_path(g, {0, -1}));
}

TEST_CASE("daily rest rule on a driver route") {
  const Instance inst = testing::example1();
  const TimeExpandedDigraph ltx = build_ltx(inst);
  // All-rest route: fine.
  CHECK(check_driver_route(ltx, make_route(ltx, 0, {}), inst.horizon).empty());
  // Three work instants: still fine (<= I/2 = 4 worked).
  const Route ok = make_route(ltx, 0,
                              {Act{ArcKind::Taxi, 1, 0}, Act{ArcKind::Taxi, 0, 1},
                               Act{ArcKind::Taxi, 1, 2}});
  CHECK(check_driver_route(ltx, ok, inst.horizon).empty());
  // Five work instants in one day: daily rest violated.
  const Route bad = make_route(ltx, 0,
                               {Act{ArcKind::Taxi, 1, 0}, Act{ArcKind::Taxi, 0, 1},
                                Act{ArcKind::Taxi, 1, 2}, Act{ArcKind::Taxi, 0, 3},
                                Act{ArcKind::Taxi, 1, 4}});
  CHECK(mentions(check_driver_route(ltx, bad, inst.horizon), "daily rest"));
}

TEST_CASE("daily rest windows straddle midnight") {
  Instance inst = testing::example1();
  inst.horizon.days = 2;
  const TimeExpandedDigraph ltx = build_ltx(inst);
  // Work instants 5..10: any window containing them keeps at most
  // 8 - 6 = 2 rest instants somewhere; window starting at 3 has 2 < 4.
  const Route bad = make_route(ltx, 0,
                               {Act{ArcKind::Taxi, 1, 5}, Act{ArcKind::Taxi, 0, 6},
                                Act{ArcKind::Taxi, 1, 7}, Act{ArcKind::Taxi, 0, 8},
                                Act{ArcKind::Taxi, 1, 9}, Act{ArcKind::Taxi, 0, 10}});
  CHECK(mentions(check_driver_route(ltx, bad, inst.horizon), "daily rest"));
  // The same load split as 3 + 3 across the two days is legal.
  const Route ok = make_route(ltx, 0,
                              {Act{ArcKind::Taxi, 1, 0}, Act{ArcKind::Taxi, 0, 1},
                               Act{ArcKind::Taxi, 1, 2}, Act{ArcKind::Taxi, 0, 13},
                               Act{ArcKind::Taxi, 1, 14}, Act{ArcKind::Taxi, 0, 15}});
  CHECK(check_driver_route(ltx, ok, inst.horizon).empty());
}

TEST_CASE("weekly rest rule needs a full day off") {
  Instance inst = testing::example1();
  inst.horizon.days = 7;
  const TimeExpandedDigraph ltx = build_ltx(inst);
  CHECK(check_driver_route(ltx, make_route(ltx, 0, {}), inst.horizon).empty());
  // One short taxi ride every single day: no full rest day anywhere.
  std::vector<Act> acts;
  for (int j = 0; j < 7; ++j) acts.push_back(Act{ArcKind::Taxi, (j + 1) % 2, 8 * j});
  const Route bad = make_route(ltx, 0, acts);
  CHECK(mentions(check_driver_route(ltx, bad, inst.horizon), "no day off"));
  // Leaving day 3 untouched restores legality.
  std::vector<Act> acts2;
  int loc = 0;
  for (int j = 0; j < 7; ++j) {
    if (j == 3) continue;
    acts2.push_back(Act{ArcKind::Taxi, 1 - loc, 8 * j});
    loc = 1 - loc;
  }
  const Route ok = make_route(ltx, 0, acts2);
  CHECK(check_driver_route(ltx, ok, inst.horizon).empty());
}

TEST_CASE("full plan checks on the reference instance") {
  const Instance inst = testing::example1();
  for (Flavor f : {Flavor::LT, Flavor::LTC, Flavor::LTR}) {
    CAPTURE(flavor_name(f));
    const GraphBundle b = build_bundle(inst, f);
    Plan plan = reference_plan(b);
    CHECK(check_plan(plan, b).empty());
    const CostBreakdown cost = plan_cost(plan, b);
    CHECK(cost.truck_travel == 2);
    CHECK(cost.taxi_travel == 0);
    CHECK(cost.delay_penalties == 0);
    CHECK(cost.total() == 2);

    // Dropping a driver leaves truck arcs uncovered.
    Plan broken = plan;
    broken.drivers[1].arcs.clear();
    CHECK(mentions(check_sync(broken, b), "sync violated"));

    // Claiming a day off while working on it is caught.
    Plan lazy = plan;
    lazy.day_off[0][0] = 1;
    CHECK(mentions(check_plan(lazy, b), "off but works"));

    // A truck route must leave from the truck's own depot.
    Plan wrong = plan;
    std::swap(wrong.trucks[0], wrong.trucks[1]);
    CHECK(mentions(check_plan(wrong, b), "start location"));
  }
}

TEST_CASE("flow decomposition recovers routes") {
  const Instance inst = testing::example1();
  const GraphBundle b = build_bundle(inst, Flavor::LTR);
  const Route r = make_route(b.truck, 0,
                             {Act{ArcKind::Pickup, 0, 0, 0}, Act{ArcKind::Trip, 1, 1},
                              Act{ArcKind::Delivery, 1, 2, 0}, Act{ArcKind::Pickup, 1, 3, 1},
                              Act{ArcKind::Trip, 0, 4}, Act{ArcKind::Delivery, 0, 5, 1}});
  std::vector<std::int64_t> flow(b.truck.num_arcs(), 0);
  for (int a : r.arcs) ++flow[a];

  const std::vector<Route> routes = decompose_flow(b.truck, flow, inst);
  REQUIRE(routes.size() == 2);
  CHECK(routes[0].arcs == r.arcs);
  CHECK(routes[1].empty());

  // Conservation violations are rejected.
  std::vector<std::int64_t> broken = flow;
  broken[r.arcs[2]] += 1;
  CHECK_THROWS(decompose_flow(b.truck, broken, inst));
  CHECK_THROWS(decompose_flow(b.truck, std::vector<std::int64_t>(3, 0), inst));
}
