#include "doctest.h"
#include "support/example1.hpp"
#include "svrcsp/generate.hpp"
#include "svrcsp/heuristic.hpp"

using namespace svrcsp;

TEST_CASE("greedy plan is feasible on the reference instance") {
  const Instance inst = testing::example1();
  for (Flavor f : {Flavor::LT, Flavor::LTC, Flavor::LTR}) {
    CAPTURE(flavor_name(f));
    const GraphBundle b = build_bundle(inst, f);
    const auto plan = greedy_warm_start(inst, b);
    REQUIRE(plan.has_value());
    CHECK(check_plan(*plan, b).empty());
    // Never beats the certified optimum.
    CHECK(plan_cost(*plan, b).total() >= 2);
  }
}

TEST_CASE("greedy plans stay feasible across seeds and flavors") {
  int found = 0;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    GenSpec spec = preset("desk");
    spec.seed = seed;
    const Instance inst = generate(spec);
    REQUIRE(validate_instance(inst).empty());
    for (Flavor f : {Flavor::LT, Flavor::LTC, Flavor::LTR}) {
      const GraphBundle b = build_bundle(inst, f);
      const auto plan = greedy_warm_start(inst, b);
      if (!plan) continue;
      ++found;
      CAPTURE(seed);
      CAPTURE(flavor_name(f));
      CHECK(check_plan(*plan, b).empty());
      CHECK(plan_cost(*plan, b).total() >= 0);
    }
  }
  // The construction should succeed on a healthy share of the corpus.
  CHECK(found >= 8);
}

TEST_CASE("no requests yields an all-rest plan") {
  Instance inst = testing::example1();
  inst.requests.clear();
  const GraphBundle b = build_bundle(inst, Flavor::LT);
  const auto plan = greedy_warm_start(inst, b);
  REQUIRE(plan.has_value());
  CHECK(check_plan(*plan, b).empty());
  CHECK(plan_cost(*plan, b).total() == 0);
}
