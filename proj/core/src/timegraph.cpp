#include "svrcsp/timegraph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace svrcsp {

const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::LT: return "lt";
    case Flavor::LTC: return "ltc";
    case Flavor::LTR: return "ltr";
    case Flavor::LTX: return "ltx";
  }
  return "?";
}

namespace {

std::int64_t node_key(const Instance& inst, int loc, int instant, int tag) {
  const std::int64_t cols = inst.horizon.total_instants() + 1;
  return (static_cast<std::int64_t>(tag + 8) * inst.num_locations + loc) * cols + instant;
}

struct Builder {
  const Instance& inst;
  TimeExpandedDigraph g;
  std::unordered_map<std::int64_t, int> index;

  explicit Builder(const Instance& i, Flavor f) : inst(i) { g.flavor = f; }

  int add_node(int loc, int instant, int tag) {
    GNode n;
    n.loc = loc;
    n.instant = instant;
    n.tag = tag;
    g.nodes.push_back(n);
    const int id = static_cast<int>(g.nodes.size()) - 1;
    index.emplace(node_key(inst, loc, instant, tag), id);
    return id;
  }

  int node(int loc, int instant, int tag) const {
    return index.at(node_key(inst, loc, instant, tag));
  }

  void add_arc(ArcKind kind, int req, int tail, int head, std::int64_t weight) {
    GArc a;
    a.kind = kind;
    a.req = req;
    a.tail = tail;
    a.head = head;
    a.weight = weight;
    g.arcs.push_back(a);
  }

  void add_source_sink() {
    GNode s;
    s.is_source = true;
    g.nodes.push_back(s);
    g.source = static_cast<int>(g.nodes.size()) - 1;
    GNode t;
    t.is_sink = true;
    g.nodes.push_back(t);
    g.sink = static_cast<int>(g.nodes.size()) - 1;
  }

  // Rest and trip arcs for every located tag layer present.
  void add_movement_arcs(const std::vector<int>& tags) {
    const int total = inst.horizon.total_instants();
    for (int tag : tags) {
      for (int l = 0; l < inst.num_locations; ++l) {
        for (int i = 0; i < total; ++i) {
          add_arc(ArcKind::Rest, -1, node(l, i, tag), node(l, i + 1, tag), 0);
        }
      }
      for (int l1 = 0; l1 < inst.num_locations; ++l1) {
        for (int l2 = 0; l2 < inst.num_locations; ++l2) {
          if (l1 == l2) continue;
          const int delta = static_cast<int>(inst.truck_time.at(l1, l2));
          for (int i = 0; i + delta <= total; ++i) {
            add_arc(ArcKind::Trip, -1, node(l1, i, tag), node(l2, i + delta, tag),
                    inst.truck_cost.at(l1, l2));
          }
        }
      }
    }
  }

  // Service arcs; `empty_tag` is the cargo-free layer and `loaded_tag_of`
  // maps a request to the layer its loaded nodes live on (may be the
  // same layer, as in LT/LTX).
  template <typename LoadedTagOf>
  void add_service_arcs(int empty_tag, LoadedTagOf loaded_tag_of) {
    for (const Request& r : inst.requests) {
      const int loaded_tag = loaded_tag_of(r);
      for (int i : service_start_instants(inst.horizon, r, Side::Pickup)) {
        add_arc(ArcKind::Pickup, r.id, node(r.pickup_loc, i, empty_tag),
                node(r.pickup_loc, i + r.pickup_service, loaded_tag), 0);
      }
      for (int i : service_start_instants(inst.horizon, r, Side::Delivery)) {
        add_arc(ArcKind::Delivery, r.id, node(r.delivery_loc, i, loaded_tag),
                node(r.delivery_loc, i + r.delivery_service, empty_tag),
                delay_penalty(inst.horizon, r, i));
      }
    }
  }

  void add_terminal_arcs(const std::vector<int>& start_locs, int terminal_tag) {
    const int total = inst.horizon.total_instants();
    for (int l : start_locs) add_arc(ArcKind::Source, -1, g.source, node(l, 0, terminal_tag), 0);
    for (int l = 0; l < inst.num_locations; ++l) {
      add_arc(ArcKind::Sink, -1, node(l, total, terminal_tag), g.sink, 0);
    }
  }

  TimeExpandedDigraph take(bool prune) {
    g.nodes_before_pruning = g.nodes.size();
    g.arcs_before_pruning = g.arcs.size();
    if (prune) prune_unreachable();
    g.finalize();
    return std::move(g);
  }

  // Keep only nodes on some source-sink directed path.
  void prune_unreachable() {
    const int n = static_cast<int>(g.nodes.size());
    std::vector<std::vector<int>> out(n), in(n);
    for (int a = 0; a < static_cast<int>(g.arcs.size()); ++a) {
      out[g.arcs[a].tail].push_back(g.arcs[a].head);
      in[g.arcs[a].head].push_back(g.arcs[a].tail);
    }
    auto reach = [&](int start, const std::vector<std::vector<int>>& adj) {
      std::vector<bool> seen(n, false);
      std::deque<int> q{start};
      seen[start] = true;
      while (!q.empty()) {
        const int u = q.front();
        q.pop_front();
        for (int v : adj[u]) {
          if (!seen[v]) {
            seen[v] = true;
            q.push_back(v);
          }
        }
      }
      return seen;
    };
    const auto fwd = reach(g.source, out);
    const auto bwd = reach(g.sink, in);

    std::vector<int> remap(n, -1);
    std::vector<GNode> kept;
    for (int u = 0; u < n; ++u) {
      if (fwd[u] && bwd[u]) {
        remap[u] = static_cast<int>(kept.size());
        kept.push_back(g.nodes[u]);
      }
    }
    std::vector<GArc> kept_arcs;
    for (const GArc& a : g.arcs) {
      if (remap[a.tail] >= 0 && remap[a.head] >= 0) {
        GArc b = a;
        b.tail = remap[a.tail];
        b.head = remap[a.head];
        kept_arcs.push_back(b);
      }
    }
    g.nodes = std::move(kept);
    g.arcs = std::move(kept_arcs);
    g.source = remap[g.source];
    g.sink = remap[g.sink];
  }
};

}  // namespace

void TimeExpandedDigraph::finalize() {
  out_arcs.assign(nodes.size(), {});
  in_arcs.assign(nodes.size(), {});
  node_index_.clear();
  for (int a = 0; a < num_arcs(); ++a) {
    out_arcs[arcs[a].tail].push_back(a);
    in_arcs[arcs[a].head].push_back(a);
  }
  for (int u = 0; u < num_nodes(); ++u) {
    const GNode& n = nodes[u];
    if (n.loc >= 0) {
      // 21 bits per field is ample for desk-scale graphs.
      const std::int64_t key = (static_cast<std::int64_t>(n.tag + 8) << 42) |
                               (static_cast<std::int64_t>(n.loc) << 21) | n.instant;
      node_index_.emplace(key, u);
    }
  }
}

int TimeExpandedDigraph::find_node(int loc, int instant, int tag) const {
  const std::int64_t key = (static_cast<std::int64_t>(tag + 8) << 42) |
                           (static_cast<std::int64_t>(loc) << 21) | instant;
  auto it = node_index_.find(key);
  return it == node_index_.end() ? -1 : it->second;
}

std::vector<int> TimeExpandedDigraph::arcs_of_kind(ArcKind k) const {
  std::vector<int> out;
  for (int a = 0; a < num_arcs(); ++a) {
    if (arcs[a].kind == k) out.push_back(a);
  }
  return out;
}

std::vector<int> TimeExpandedDigraph::service_arcs(ArcKind k, int req) const {
  std::vector<int> out;
  for (int a = 0; a < num_arcs(); ++a) {
    if (arcs[a].kind == k && arcs[a].req == req) out.push_back(a);
  }
  return out;
}

std::string TimeExpandedDigraph::dot_dump() const {
  std::ostringstream os;
  os << "digraph " << flavor_name(flavor) << " {\n";
  for (int u = 0; u < num_nodes(); ++u) {
    const GNode& n = nodes[u];
    os << "  n" << u << " [label=\"";
    if (n.is_source) {
      os << "source";
    } else if (n.is_sink) {
      os << "sink";
    } else {
      os << "l" << n.loc << ",i" << n.instant;
      if (n.tag == kTagEmpty) os << ",empty";
      if (n.tag == kTagLoaded) os << ",loaded";
      if (n.tag >= 0) os << ",r" << n.tag;
    }
    os << "\"];\n";
  }
  static const char* kind_names[] = {"rest", "trip", "pickup", "delivery",
                                     "taxi", "source", "sink"};
  for (int a = 0; a < num_arcs(); ++a) {
    const GArc& e = arcs[a];
    os << "  n" << e.tail << " -> n" << e.head << " [label=\"a" << a << ":"
       << kind_names[static_cast<int>(e.kind)];
    if (e.req >= 0) os << " r" << e.req;
    if (e.weight != 0) os << " c=" << e.weight;
    os << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

TimeExpandedDigraph build_lt(const Instance& inst) {
  Builder b(inst, Flavor::LT);
  const int total = inst.horizon.total_instants();
  for (int l = 0; l < inst.num_locations; ++l) {
    for (int i = 0; i <= total; ++i) b.add_node(l, i, kTagNone);
  }
  b.add_source_sink();
  b.add_movement_arcs({kTagNone});
  b.add_service_arcs(kTagNone, [](const Request&) { return kTagNone; });
  b.add_terminal_arcs(inst.truck_start_locations(), kTagNone);
  return b.take(false);
}

TimeExpandedDigraph build_ltc(const Instance& inst) {
  Builder b(inst, Flavor::LTC);
  const int total = inst.horizon.total_instants();
  for (int tag : {kTagEmpty, kTagLoaded}) {
    for (int l = 0; l < inst.num_locations; ++l) {
      for (int i = 0; i <= total; ++i) b.add_node(l, i, tag);
    }
  }
  b.add_source_sink();
  b.add_movement_arcs({kTagEmpty, kTagLoaded});
  b.add_service_arcs(kTagEmpty, [](const Request&) { return kTagLoaded; });
  b.add_terminal_arcs(inst.truck_start_locations(), kTagEmpty);
  return b.take(true);
}

TimeExpandedDigraph build_ltr(const Instance& inst) {
  Builder b(inst, Flavor::LTR);
  const int total = inst.horizon.total_instants();
  std::vector<int> tags{kTagEmpty};
  for (const Request& r : inst.requests) tags.push_back(r.id);
  for (int tag : tags) {
    for (int l = 0; l < inst.num_locations; ++l) {
      for (int i = 0; i <= total; ++i) b.add_node(l, i, tag);
    }
  }
  b.add_source_sink();
  b.add_movement_arcs(tags);
  b.add_service_arcs(kTagEmpty, [](const Request& r) { return r.id; });
  b.add_terminal_arcs(inst.truck_start_locations(), kTagEmpty);
  return b.take(true);
}

TimeExpandedDigraph build_ltx(const Instance& inst) {
  Builder b(inst, Flavor::LTX);
  const int total = inst.horizon.total_instants();
  for (int l = 0; l < inst.num_locations; ++l) {
    for (int i = 0; i <= total; ++i) b.add_node(l, i, kTagNone);
  }
  b.add_source_sink();
  b.add_movement_arcs({kTagNone});
  b.add_service_arcs(kTagNone, [](const Request&) { return kTagNone; });
  for (int l1 = 0; l1 < inst.num_locations; ++l1) {
    for (int l2 = 0; l2 < inst.num_locations; ++l2) {
      if (l1 == l2) continue;
      const int delta = static_cast<int>(inst.taxi_time.at(l1, l2));
      for (int i = 0; i + delta <= total; ++i) {
        b.add_arc(ArcKind::Taxi, -1, b.node(l1, i, kTagNone), b.node(l2, i + delta, kTagNone),
                  inst.taxi_cost.at(l1, l2));
      }
    }
  }
  b.add_terminal_arcs(inst.driver_start_locations(), kTagNone);
  TimeExpandedDigraph g = b.take(false);
  // Drivers pay for taxi rides only; trips and services are billed to the
  // truck that executes them.
  for (GArc& e : g.arcs) {
    if (e.kind != ArcKind::Taxi) e.weight = 0;
  }
  return g;
}

namespace {

// Tag-blind signature of a synchronisable arc.
std::int64_t sync_key(const TimeExpandedDigraph& g, int a) {
  const GArc& e = g.arcs[a];
  const std::int64_t kind = static_cast<std::int64_t>(e.kind);
  return ((((kind * 4096 + (e.req + 1)) * 2097152 + g.tail_loc(a)) * 2097152 + g.tail_instant(a)) *
              2097152 +
          g.head_loc(a)) *
             2097152 +
         g.head_instant(a);
}

bool is_syncable(ArcKind k) {
  return k == ArcKind::Trip || k == ArcKind::Pickup || k == ArcKind::Delivery;
}

}  // namespace

std::vector<int> arc_correspondence(const TimeExpandedDigraph& truck_graph,
                                    const TimeExpandedDigraph& ltx, int ltx_arc) {
  if (!is_syncable(ltx.arcs[ltx_arc].kind)) {
    throw std::invalid_argument("arc_correspondence: arc kind is not synchronised");
  }
  const std::int64_t key = sync_key(ltx, ltx_arc);
  std::vector<int> out;
  for (int a = 0; a < truck_graph.num_arcs(); ++a) {
    if (is_syncable(truck_graph.arcs[a].kind) && sync_key(truck_graph, a) == key) out.push_back(a);
  }
  return out;
}

GraphBundle build_bundle(const Instance& inst, Flavor truck_flavor) {
  GraphBundle b;
  b.inst = &inst;
  switch (truck_flavor) {
    case Flavor::LT: b.truck = build_lt(inst); break;
    case Flavor::LTC: b.truck = build_ltc(inst); break;
    case Flavor::LTR: b.truck = build_ltr(inst); break;
    case Flavor::LTX: throw std::invalid_argument("LTX is not a truck flavor");
  }
  b.ltx = build_ltx(inst);
  std::unordered_map<std::int64_t, std::vector<int>> by_key;
  for (int a = 0; a < b.truck.num_arcs(); ++a) {
    if (is_syncable(b.truck.arcs[a].kind)) by_key[sync_key(b.truck, a)].push_back(a);
  }
  b.sync_arcs.assign(b.ltx.num_arcs(), {});
  for (int e = 0; e < b.ltx.num_arcs(); ++e) {
    if (!is_syncable(b.ltx.arcs[e].kind)) continue;
    auto it = by_key.find(sync_key(b.ltx, e));
    if (it != by_key.end()) b.sync_arcs[e] = it->second;
  }
  return b;
}

std::vector<int> agent_arcs(const TimeExpandedDigraph& g, int start_loc) {
  std::vector<int> out;
  out.reserve(g.arcs.size());
  for (int a = 0; a < g.num_arcs(); ++a) {
    if (g.arcs[a].kind == ArcKind::Source && g.head_loc(a) != start_loc) continue;
    out.push_back(a);
  }
  return out;
}

std::int64_t ltr_capacity(const TimeExpandedDigraph& g, int arc, const Instance& inst) {
  const GArc& e = g.arcs[arc];
  if (e.kind == ArcKind::Source) {
    const int l = g.nodes[e.head].loc;
    std::int64_t cnt = 0;
    for (int lv : inst.truck_start) {
      if (lv == l) ++cnt;
    }
    return cnt;
  }
  const int tail_tag = g.nodes[e.tail].tag;
  const int head_tag = g.nodes[e.head].tag;
  if (tail_tag >= 0 || head_tag >= 0) return 1;
  return inst.num_trucks();
}

}  // namespace svrcsp
