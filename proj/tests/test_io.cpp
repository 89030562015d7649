#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "support/example1.hpp"
#include "support/make_route.hpp"
#include "svrcsp/generate.hpp"
#include "svrcsp/io.hpp"

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

bool same_instance(const Instance& a, const Instance& b) {
  return instance_to_json(a) == instance_to_json(b);
}

}  // namespace

TEST_CASE("instance json round trip") {
  const Instance inst = testing::example1();
  const std::string text = instance_to_json(inst);
  CHECK(text.find("\"schema_version\": 1") != std::string::npos);
  CHECK(same_instance(inst, instance_from_json(text)));

  GenSpec spec = preset("desk");
  spec.seed = 42;
  const Instance gen = generate(spec);
  CHECK(same_instance(gen, instance_from_json(instance_to_json(gen))));
}

TEST_CASE("malformed instance json is rejected") {
  CHECK_THROWS(instance_from_json("not json"));
  CHECK_THROWS(instance_from_json("{}"));
  std::string text = instance_to_json(testing::example1());
  // Wrong schema version.
  auto pos = text.find("\"schema_version\": 1");
  text.replace(pos, std::string("\"schema_version\": 1").size(), "\"schema_version\": 99");
  CHECK_THROWS(instance_from_json(text));
}

TEST_CASE("plan json survives the round trip in every flavor") {
  const Instance inst = testing::example1();
  for (Flavor f : {Flavor::LT, Flavor::LTC, Flavor::LTR}) {
    CAPTURE(flavor_name(f));
    const GraphBundle b = build_bundle(inst, f);
    const Plan plan = reference_plan(b);
    const std::string text = plan_to_json(plan, b);
    const Plan back = plan_from_json(text, b);
    REQUIRE(back.trucks.size() == plan.trucks.size());
    for (std::size_t v = 0; v < plan.trucks.size(); ++v)
      CHECK(back.trucks[v].arcs == plan.trucks[v].arcs);
    for (std::size_t d = 0; d < plan.drivers.size(); ++d)
      CHECK(back.drivers[d].arcs == plan.drivers[d].arcs);
    CHECK(back.day_off == plan.day_off);
  }
}

TEST_CASE("plans transfer between flavors through the step encoding") {
  const Instance inst = testing::example1();
  const GraphBundle lt = build_bundle(inst, Flavor::LT);
  const GraphBundle ltc = build_bundle(inst, Flavor::LTC);
  const std::string text = plan_to_json(reference_plan(lt), lt);
  const Plan on_ltc = plan_from_json(text, ltc);
  CHECK(check_plan(on_ltc, ltc).empty());
  CHECK(plan_cost(on_ltc, ltc).total() == 2);
}

TEST_CASE("lp text contains the advertised sections and rows") {
  const Instance inst = testing::example1();
  const GraphBundle b = build_bundle(inst, Flavor::LT);
  const MilpModel m = build_model(inst, b, {Flavor::LT});
  const std::string lp = model_to_lp(m);
  CHECK(lp.find("Minimize") != std::string::npos);
  CHECK(lp.find("Subject To") != std::string::npos);
  CHECK(lp.find("Bounds") != std::string::npos);
  CHECK(lp.find("End") != std::string::npos);
  CHECK(lp.find("pick_once_r0") != std::string::npos);
  CHECK(lp.find("pick_once_r1") != std::string::npos);
  CHECK(lp.find("pick_once_r2") == std::string::npos);
  CHECK(lp.find("W_d0_j0") != std::string::npos);

  CutPool pool;
  pool.add_all(gen_prec(m));
  REQUIRE(!pool.cuts.empty());
  const std::string with_cuts = model_to_lp(m, &pool.cuts);
  CHECK(with_cuts.find("cut pool") != std::string::npos);
  CHECK(with_cuts.find("cut_") != std::string::npos);
}

TEST_CASE("integer variables land in the right declaration block") {
  const Instance inst = testing::example1();
  const GraphBundle lt = build_bundle(inst, Flavor::LT);
  const MilpModel mlt = build_model(inst, lt, {Flavor::LT});
  CHECK(model_to_lp(mlt).find("Binaries") != std::string::npos);
  const GraphBundle ltr = build_bundle(inst, Flavor::LTR);
  const MilpModel mltr = build_model(inst, ltr, {Flavor::LTR});
  CHECK(model_to_lp(mltr).find("Generals") != std::string::npos);
}

TEST_CASE("solution files are read back with warnings for strangers") {
  const Instance inst = testing::example1();
  const GraphBundle b = build_bundle(inst, Flavor::LT);
  const MilpModel m = build_model(inst, b, {Flavor::LT});
  const std::vector<double> x = warm_start_assignment(reference_plan(b), m);

  const std::string path = "io_test_solution.txt";
  {
    std::ofstream out(path);
    for (int j = 0; j < m.num_vars(); ++j) {
      if (x[j] != 0.0) out << m.vars[j].name << " " << x[j] << "\n";
    }
    out << "mystery_var 1\n";
  }
  const auto [values, warnings] = read_solution(path, m);
  CHECK(warnings == 1);
  CHECK(values == x);
  std::remove(path.c_str());

  const Plan plan = solution_to_plan(m, values);
  CHECK(plan_cost(plan, b).total() == 2);
}

TEST_CASE("file helpers round trip through disk") {
  const Instance inst = testing::example1();
  save_instance(inst, "io_test_instance.json");
  CHECK(same_instance(inst, load_instance("io_test_instance.json")));
  std::remove("io_test_instance.json");

  const GraphBundle b = build_bundle(inst, Flavor::LT);
  const Plan plan = reference_plan(b);
  save_plan(plan, b, "io_test_plan.json");
  const Plan back = load_plan("io_test_plan.json", b);
  CHECK(back.trucks[0].arcs == plan.trucks[0].arcs);
  std::remove("io_test_plan.json");

  CHECK_THROWS(load_instance("does_not_exist.json"));
}
