#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "svrcsp/instance.hpp"

namespace svrcsp {

enum class Flavor { LT, LTC, LTR, LTX };

const char* flavor_name(Flavor f);

enum class ArcKind { Rest, Trip, Pickup, Delivery, Taxi, Source, Sink };

// Cargo tag of a located node.  LT/LTX nodes carry kTagNone; LTC uses
// kTagEmpty / kTagLoaded; LTR uses kTagEmpty or the request id.
inline constexpr int kTagNone = -2;
inline constexpr int kTagEmpty = -1;
inline constexpr int kTagLoaded = -3;

struct GNode {
  bool is_source = false;
  bool is_sink = false;
  int loc = -1;
  int instant = -1;
  int tag = kTagNone;
};

struct GArc {
  ArcKind kind = ArcKind::Rest;
  int req = -1;  // request id for Pickup/Delivery arcs
  int tail = -1;
  int head = -1;
  std::int64_t weight = 0;
};

struct TimeExpandedDigraph {
  Flavor flavor = Flavor::LT;
  std::vector<GNode> nodes;
  std::vector<GArc> arcs;
  std::vector<std::vector<int>> out_arcs;
  std::vector<std::vector<int>> in_arcs;
  int source = -1;
  int sink = -1;
  // Node/arc counts before pruning (LTC/LTR only; equal to current
  // sizes for LT/LTX).
  std::size_t nodes_before_pruning = 0;
  std::size_t arcs_before_pruning = 0;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_arcs() const { return static_cast<int>(arcs.size()); }

  // Tail/head location and instant of an arc (valid for located endpoints).
  int tail_loc(int a) const { return nodes[arcs[a].tail].loc; }
  int head_loc(int a) const { return nodes[arcs[a].head].loc; }
  int tail_instant(int a) const { return nodes[arcs[a].tail].instant; }
  int head_instant(int a) const { return nodes[arcs[a].head].instant; }

  int find_node(int loc, int instant, int tag) const;

  std::vector<int> arcs_of_kind(ArcKind k) const;
  std::vector<int> service_arcs(ArcKind k, int req) const;  // Pickup/Delivery of one request

  std::string dot_dump() const;

  // Rebuilds adjacency and the node lookup; called by the builders.
  void finalize();

 private:
  std::unordered_map<std::int64_t, int> node_index_;
};

TimeExpandedDigraph build_lt(const Instance& inst);
TimeExpandedDigraph build_ltc(const Instance& inst);
TimeExpandedDigraph build_ltr(const Instance& inst);
TimeExpandedDigraph build_ltx(const Instance& inst);

// Truck graph of a formulation flavor together with the driver graph.
struct GraphBundle {
  const Instance* inst = nullptr;
  TimeExpandedDigraph truck;  // LT, LTC or LTR
  TimeExpandedDigraph ltx;
  // sync_arcs[e] lists the truck-graph arcs matching LTX arc e; filled
  // for Trip/Pickup/Delivery arcs of LTX, empty otherwise.
  std::vector<std::vector<int>> sync_arcs;
};

GraphBundle build_bundle(const Instance& inst, Flavor truck_flavor);

// Arcs matching an LTX trip/pickup/delivery arc in the truck graph.
// Throws for other arc kinds.
std::vector<int> arc_correspondence(const TimeExpandedDigraph& truck_graph,
                                    const TimeExpandedDigraph& ltx, int ltx_arc);

// All arcs usable by an agent starting at `start_loc`: everything except
// source arcs into other locations.
std::vector<int> agent_arcs(const TimeExpandedDigraph& g, int start_loc);

// Flow capacity of an LTR arc.
std::int64_t ltr_capacity(const TimeExpandedDigraph& g, int arc, const Instance& inst);

}  // namespace svrcsp
