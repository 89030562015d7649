#include <algorithm>
#include <string>

#include "doctest.h"
#include "support/example1.hpp"
#include "support/make_route.hpp"
#include "svrcsp/timegraph.hpp"

using namespace svrcsp;

namespace {

int count_kind(const TimeExpandedDigraph& g, ArcKind k) {
  return static_cast<int>(g.arcs_of_kind(k).size());
}

bool mentions(const std::vector<std::string>& msgs, const std::string& needle) {
  return std::any_of(msgs.begin(), msgs.end(),
                     [&](const std::string& m) { return m.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("truck graph node and arc counts on the two-location instance") {
  const Instance inst = testing::example1();
  const TimeExpandedDigraph g = build_lt(inst);
  // 2 locations x 9 instants, plus source and sink.
  CHECK(g.num_nodes() == 20);
  CHECK(count_kind(g, ArcKind::Rest) == 16);
  CHECK(count_kind(g, ArcKind::Trip) == 16);
  CHECK(static_cast<int>(g.service_arcs(ArcKind::Pickup, 0).size()) == 3);
  CHECK(static_cast<int>(g.service_arcs(ArcKind::Pickup, 1).size()) == 3);
  CHECK(static_cast<int>(g.service_arcs(ArcKind::Delivery, 0).size()) == 5);
  CHECK(static_cast<int>(g.service_arcs(ArcKind::Delivery, 1).size()) == 3);
  CHECK(count_kind(g, ArcKind::Source) == 2);
  CHECK(count_kind(g, ArcKind::Sink) == 2);
  CHECK(count_kind(g, ArcKind::Taxi) == 0);
  CHECK(g.nodes_before_pruning == g.nodes.size());
  CHECK(g.arcs_before_pruning == g.arcs.size());
}

TEST_CASE("driver graph has taxi arcs and driver sources") {
  const Instance inst = testing::example1();
  const TimeExpandedDigraph g = build_ltx(inst);
  CHECK(g.num_nodes() == 20);
  CHECK(count_kind(g, ArcKind::Taxi) == 16);
  CHECK(count_kind(g, ArcKind::Trip) == 16);
  CHECK(count_kind(g, ArcKind::Source) == 2);
  // Taxi arcs carry the taxi tariff.
  for (int a : g.arcs_of_kind(ArcKind::Taxi)) CHECK(g.arcs[a].weight == 2);
  for (int a : g.arcs_of_kind(ArcKind::Trip)) CHECK(g.arcs[a].weight == 0);
}

TEST_CASE("cargo-tagged graph: pre-pruning size and tag structure") {
  const Instance inst = testing::example1();
  const TimeExpandedDigraph g = build_ltc(inst);
  // Empty and loaded copies of every located node, before pruning.
  CHECK(g.nodes_before_pruning == 2 * 2 * 9 + 2);
  CHECK(g.nodes.size() <= g.nodes_before_pruning);
  CHECK(g.arcs.size() <= g.arcs_before_pruning);
  for (const GNode& n : g.nodes) {
    if (n.is_source || n.is_sink) continue;
    CHECK((n.tag == kTagEmpty || n.tag == kTagLoaded));
  }
  // Pickups move empty -> loaded, deliveries loaded -> empty.
  for (int a : g.arcs_of_kind(ArcKind::Pickup)) {
    CHECK(g.nodes[g.arcs[a].tail].tag == kTagEmpty);
    CHECK(g.nodes[g.arcs[a].head].tag == kTagLoaded);
  }
  for (int a : g.arcs_of_kind(ArcKind::Delivery)) {
    CHECK(g.nodes[g.arcs[a].tail].tag == kTagLoaded);
    CHECK(g.nodes[g.arcs[a].head].tag == kTagEmpty);
  }
  // Every node lies on some source-to-sink path after pruning.
  for (int a : g.arcs_of_kind(ArcKind::Sink)) CHECK(g.nodes[g.arcs[a].tail].tag == kTagEmpty);
}

TEST_CASE("request-tagged graph: pre-pruning size and tag structure") {
  const Instance inst = testing::example1();
  const TimeExpandedDigraph g = build_ltr(inst);
  // Empty copy plus one copy per request, before pruning.
  CHECK(g.nodes_before_pruning == (1 + 2) * 2 * 9 + 2);
  CHECK(g.nodes.size() <= g.nodes_before_pruning);
  for (int a : g.arcs_of_kind(ArcKind::Pickup)) {
    CHECK(g.nodes[g.arcs[a].tail].tag == kTagEmpty);
    CHECK(g.nodes[g.arcs[a].head].tag == g.arcs[a].req);
  }
  for (int a : g.arcs_of_kind(ArcKind::Delivery)) {
    CHECK(g.nodes[g.arcs[a].tail].tag == g.arcs[a].req);
    CHECK(g.nodes[g.arcs[a].head].tag == kTagEmpty);
  }
}

TEST_CASE("arc correspondence between driver and truck graphs") {
  const Instance inst = testing::example1();
  for (Flavor f : {Flavor::LT, Flavor::LTC, Flavor::LTR}) {
    CAPTURE(flavor_name(f));
    const GraphBundle b = build_bundle(inst, f);
    REQUIRE(b.sync_arcs.size() == static_cast<std::size_t>(b.ltx.num_arcs()));
    for (int e = 0; e < b.ltx.num_arcs(); ++e) {
      const ArcKind k = b.ltx.arcs[e].kind;
      if (k != ArcKind::Trip && k != ArcKind::Pickup && k != ArcKind::Delivery) {
        CHECK(b.sync_arcs[e].empty());
        continue;
      }
      CHECK(b.sync_arcs[e] == arc_correspondence(b.truck, b.ltx, e));
      for (int a : b.sync_arcs[e]) {
        CHECK(b.truck.arcs[a].kind == k);
        CHECK(b.truck.tail_loc(a) == b.ltx.tail_loc(e));
        CHECK(b.truck.head_loc(a) == b.ltx.head_loc(e));
        CHECK(b.truck.tail_instant(a) == b.ltx.tail_instant(e));
        CHECK(b.truck.head_instant(a) == b.ltx.head_instant(e));
        if (k != ArcKind::Trip) CHECK(b.truck.arcs[a].req == b.ltx.arcs[e].req);
      }
    }
    // Every truck trip/service arc is covered by exactly one driver arc.
    std::vector<int> covered(b.truck.num_arcs(), 0);
    for (int e = 0; e < b.ltx.num_arcs(); ++e) {
      for (int a : b.sync_arcs[e]) ++covered[a];
    }
    for (int a = 0; a < b.truck.num_arcs(); ++a) {
      const ArcKind k = b.truck.arcs[a].kind;
      const int want =
          (k == ArcKind::Trip || k == ArcKind::Pickup || k == ArcKind::Delivery) ? 1 : 0;
      CHECK(covered[a] == want);
    }
  }
}

TEST_CASE("plain truck graph admits the classic forbidden routes") {
  const Instance inst = testing::example1();
  const TimeExpandedDigraph g = build_lt(inst);
  using testing::Act;
  using testing::make_route;

  SUBCASE("repeated service") {
    const Route r = make_route(g, 0, {Act{ArcKind::Pickup, 0, 0, 0}, Act{ArcKind::Pickup, 0, 1, 0}});
    CHECK(mentions(check_truck_route(g, r), "repeated"));
  }
  SUBCASE("unpaired service") {
    const Route r = make_route(g, 0, {Act{ArcKind::Pickup, 0, 0, 0}});
    CHECK(mentions(check_truck_route(g, r), "unpaired"));
  }
  SUBCASE("disordered service") {
    const Route r = make_route(g, 1, {Act{ArcKind::Delivery, 1, 0, 0}});
    CHECK(mentions(check_truck_route(g, r), "disordered"));
  }
  SUBCASE("excess cargo") {
    const Route r = make_route(g, 0,
                               {Act{ArcKind::Pickup, 0, 0, 0}, Act{ArcKind::Trip, 1, 1},
                                Act{ArcKind::Pickup, 1, 3, 1}, Act{ArcKind::Delivery, 1, 6, 0}});
    CHECK(mentions(check_truck_route(g, r), "excess"));
  }
}

TEST_CASE("tagged graphs exclude forbidden routes structurally") {
  const Instance inst = testing::example1();
  using testing::Act;
  using testing::make_route;
  const std::vector<Act> excess = {Act{ArcKind::Pickup, 0, 0, 0}, Act{ArcKind::Trip, 1, 1},
                                   Act{ArcKind::Pickup, 1, 3, 1}};
  const std::vector<Act> disordered = {Act{ArcKind::Delivery, 1, 0, 0}};
  for (const TimeExpandedDigraph& g : {build_ltc(inst), build_ltr(inst)}) {
    CAPTURE(flavor_name(g.flavor));
    CHECK_THROWS(make_route(g, 0, excess));      // no pickup arc from a loaded node
    CHECK_THROWS(make_route(g, 1, disordered));  // no delivery arc from an empty node
  }
}

TEST_CASE("a lawful route passes every flavor") {
  const Instance inst = testing::example1();
  using testing::Act;
  const std::vector<Act> acts = {Act{ArcKind::Pickup, 0, 0, 0},    Act{ArcKind::Trip, 1, 1},
                                 Act{ArcKind::Delivery, 1, 2, 0},  Act{ArcKind::Pickup, 1, 3, 1},
                                 Act{ArcKind::Trip, 0, 4},         Act{ArcKind::Delivery, 0, 5, 1}};
  for (Flavor f : {Flavor::LT, Flavor::LTC, Flavor::LTR}) {
    const GraphBundle b = build_bundle(inst, f);
    const Route r = testing::make_route(b.truck, 0, acts);
    CHECK(check_truck_route(b.truck, r).empty());
  }
}

TEST_CASE("agent arcs drop foreign source arcs only") {
  const Instance inst = testing::example1();
  const TimeExpandedDigraph g = build_lt(inst);
  const auto mine = agent_arcs(g, 0);
  CHECK(static_cast<int>(mine.size()) == g.num_arcs() - 1);
  for (int a : mine) {
    if (g.arcs[a].kind == ArcKind::Source) CHECK(g.head_loc(a) == 0);
  }
}

TEST_CASE("flow-graph arc capacities") {
  const Instance inst = testing::example1();
  const TimeExpandedDigraph g = build_ltr(inst);
  for (int a : g.arcs_of_kind(ArcKind::Source)) {
    CHECK(ltr_capacity(g, a, inst) == 1);  // one truck per depot here
  }
  for (int a : g.arcs_of_kind(ArcKind::Pickup)) CHECK(ltr_capacity(g, a, inst) == 1);
  for (int a : g.arcs_of_kind(ArcKind::Rest)) {
    const std::int64_t want = g.nodes[g.arcs[a].tail].tag >= 0 ? 1 : inst.num_trucks();
    CHECK(ltr_capacity(g, a, inst) == want);
  }
}
