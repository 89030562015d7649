#include "support/make_route.hpp"

#include <stdexcept>
#include <string>

namespace svrcsp::testing {

namespace {

int arc_between(const TimeExpandedDigraph& g, int tail, ArcKind kind, int head, int req) {
  for (int a : g.out_arcs[tail]) {
    if (g.arcs[a].kind != kind || g.arcs[a].head != head) continue;
    if ((kind == ArcKind::Pickup || kind == ArcKind::Delivery) && g.arcs[a].req != req) continue;
    return a;
  }
  throw std::runtime_error("make_route: no arc of kind " + std::to_string(static_cast<int>(kind)));
}

}  // namespace

Route make_route(const TimeExpandedDigraph& g, int start_loc, const std::vector<Act>& acts) {
  const bool tagged = g.flavor == Flavor::LTC || g.flavor == Flavor::LTR;
  const int empty_tag = tagged ? kTagEmpty : kTagNone;
  int horizon_end = 0;
  for (const GNode& n : g.nodes) horizon_end = std::max(horizon_end, n.instant);

  Route route;
  int loc = start_loc, t = 0, tag = empty_tag;
  auto node_at = [&](int l, int i, int tg) {
    const int n = g.find_node(l, i, tg);
    if (n < 0) throw std::runtime_error("make_route: missing node");
    return n;
  };
  route.arcs.push_back(arc_between(g, g.source, ArcKind::Source, node_at(start_loc, 0, empty_tag), -1));
  auto rest_until = [&](int until) {
    for (; t < until; ++t) {
      route.arcs.push_back(
          arc_between(g, node_at(loc, t, tag), ArcKind::Rest, node_at(loc, t + 1, tag), -1));
    }
  };
  for (const Act& act : acts) {
    if (act.start < t) throw std::runtime_error("make_route: actions out of order");
    rest_until(act.start);
    int next_tag = tag;
    if (act.kind == ArcKind::Pickup)
      next_tag = tagged ? (g.flavor == Flavor::LTR ? act.req : kTagLoaded) : tag;
    if (act.kind == ArcKind::Delivery) next_tag = empty_tag;
    const int tail = node_at(loc, act.start, tag);
    int arc = -1;
    for (int a : g.out_arcs[tail]) {
      if (g.arcs[a].kind != act.kind || g.head_loc(a) != act.to) continue;
      if ((act.kind == ArcKind::Pickup || act.kind == ArcKind::Delivery) &&
          g.arcs[a].req != act.req)
        continue;
      if (g.nodes[g.arcs[a].head].tag != next_tag) continue;
      arc = a;
      break;
    }
    if (arc < 0) throw std::runtime_error("make_route: no arc matches action");
    route.arcs.push_back(arc);
    loc = act.to;
    t = g.head_instant(arc);
    tag = next_tag;
  }
  rest_until(horizon_end);
  route.arcs.push_back(arc_between(g, node_at(loc, horizon_end, tag), ArcKind::Sink, g.sink, -1));
  return route;
}

}  // namespace svrcsp::testing
