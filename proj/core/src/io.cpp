#include "svrcsp/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <unordered_map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace svrcsp {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

Json matrix_to_json(const LocMatrix& m, int n) {
  Json rows = Json::array();
  for (int i = 0; i < n; ++i) {
    Json row = Json::array();
    for (int j = 0; j < n; ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

LocMatrix matrix_from_json(const Json& j, int n) {
  LocMatrix m;
  m.n = n;
  m.data.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) m.data[static_cast<std::size_t>(i) * n + k] = j.at(i).at(k);
  }
  return m;
}

const char* kind_label(ArcKind k) {
  switch (k) {
    case ArcKind::Trip: return "trip";
    case ArcKind::Pickup: return "pickup";
    case ArcKind::Delivery: return "delivery";
    case ArcKind::Taxi: return "taxi";
    default: return "?";
  }
}

ArcKind kind_from_label(const std::string& s) {
  if (s == "trip") return ArcKind::Trip;
  if (s == "pickup") return ArcKind::Pickup;
  if (s == "delivery") return ArcKind::Delivery;
  if (s == "taxi") return ArcKind::Taxi;
  throw std::runtime_error("plan json: unknown step kind " + s);
}

Json route_steps(const TimeExpandedDigraph& g, const Route& route) {
  Json steps = Json::array();
  for (int a : route.arcs) {
    const GArc& arc = g.arcs[a];
    if (arc.kind == ArcKind::Rest || arc.kind == ArcKind::Source || arc.kind == ArcKind::Sink)
      continue;
    Json s;
    s["kind"] = kind_label(arc.kind);
    s["from"] = g.tail_loc(a);
    s["to"] = g.head_loc(a);
    s["start"] = g.tail_instant(a);
    if (arc.req >= 0) s["req"] = arc.req;
    steps.push_back(std::move(s));
  }
  return steps;
}

int find_arc(const TimeExpandedDigraph& g, int tail, ArcKind kind, int head) {
  for (int a : g.out_arcs[tail]) {
    if (g.arcs[a].kind == kind && g.arcs[a].head == head) return a;
  }
  return -1;
}

// Rebuilds the arc path of one agent from its semantic steps.
std::vector<int> materialize(const TimeExpandedDigraph& g, int start_loc, const Json& steps) {
  const bool tagged = g.flavor == Flavor::LTC || g.flavor == Flavor::LTR;
  const int empty_tag = tagged ? kTagEmpty : kTagNone;
  std::vector<int> arcs;
  int loc = start_loc, t = 0, tag = empty_tag;

  auto node_at = [&](int l, int i, int tg) {
    const int n = g.find_node(l, i, tg);
    if (n < 0) throw std::runtime_error("plan json: step off the graph");
    return n;
  };
  auto push_arc = [&](int tail, ArcKind k, int head) {
    const int a = find_arc(g, tail, k, head);
    if (a < 0) throw std::runtime_error("plan json: no matching arc");
    arcs.push_back(a);
  };
  push_arc(g.source, ArcKind::Source, node_at(start_loc, 0, empty_tag));
  auto rest_until = [&](int until) {
    for (; t < until; ++t) push_arc(node_at(loc, t, tag), ArcKind::Rest, node_at(loc, t + 1, tag));
  };
  int horizon_end = 0;
  for (const GNode& n : g.nodes) horizon_end = std::max(horizon_end, n.instant);

  for (const Json& s : steps) {
    const ArcKind k = kind_from_label(s.at("kind"));
    const int from = s.at("from"), to = s.at("to"), start = s.at("start");
    const int req = s.contains("req") ? static_cast<int>(s.at("req")) : -1;
    if (from != loc || start < t) throw std::runtime_error("plan json: inconsistent step chain");
    rest_until(start);
    int next_tag = tag;
    if (k == ArcKind::Pickup) next_tag = tagged ? (g.flavor == Flavor::LTR ? req : kTagLoaded) : tag;
    if (k == ArcKind::Delivery) next_tag = empty_tag;
    // Step length from the arc itself: search among outgoing arcs of the tail.
    const int tail = node_at(from, start, tag);
    int arc = -1;
    for (int a : g.out_arcs[tail]) {
      if (g.arcs[a].kind != k) continue;
      if (g.head_loc(a) != to) continue;
      if (g.arcs[a].req != req && (k == ArcKind::Pickup || k == ArcKind::Delivery)) continue;
      if (g.nodes[g.arcs[a].head].tag != next_tag) continue;
      arc = a;
      break;
    }
    if (arc < 0) throw std::runtime_error("plan json: no matching arc for step");
    arcs.push_back(arc);
    loc = to;
    t = g.head_instant(arc);
    tag = next_tag;
  }
  rest_until(horizon_end);
  push_arc(node_at(loc, horizon_end, tag), ArcKind::Sink, g.sink);
  return arcs;
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["horizon"] = {{"days", inst.horizon.days},
                  {"instants_per_day", inst.horizon.instants_per_day}};
  j["num_locations"] = inst.num_locations;
  j["truck_start"] = inst.truck_start;
  j["driver_start"] = inst.driver_start;
  j["truck_time"] = matrix_to_json(inst.truck_time, inst.num_locations);
  j["truck_cost"] = matrix_to_json(inst.truck_cost, inst.num_locations);
  j["taxi_time"] = matrix_to_json(inst.taxi_time, inst.num_locations);
  j["taxi_cost"] = matrix_to_json(inst.taxi_cost, inst.num_locations);
  Json reqs = Json::array();
  for (const Request& r : inst.requests) {
    Json q;
    q["id"] = r.id;
    q["pickup"] = {{"loc", r.pickup_loc},
                   {"day", r.pickup_day},
                   {"open", r.pickup_open},
                   {"close", r.pickup_close},
                   {"service", r.pickup_service}};
    q["delivery"] = {{"loc", r.delivery_loc},
                     {"day", r.delivery_day},
                     {"open", r.delivery_open},
                     {"close", r.delivery_close},
                     {"service", r.delivery_service}};
    q["penalty"] = r.delay_penalty;
    reqs.push_back(std::move(q));
  }
  j["requests"] = std::move(reqs);
  j["meta"] = inst.meta;
  return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  const Json j = Json::parse(text);
  if (j.at("schema_version") != kSchemaVersion)
    throw std::runtime_error("instance json: unsupported schema version");
  Instance inst;
  inst.horizon.days = j.at("horizon").at("days");
  inst.horizon.instants_per_day = j.at("horizon").at("instants_per_day");
  inst.num_locations = j.at("num_locations");
  inst.truck_start = j.at("truck_start").get<std::vector<int>>();
  inst.driver_start = j.at("driver_start").get<std::vector<int>>();
  inst.truck_time = matrix_from_json(j.at("truck_time"), inst.num_locations);
  inst.truck_cost = matrix_from_json(j.at("truck_cost"), inst.num_locations);
  inst.taxi_time = matrix_from_json(j.at("taxi_time"), inst.num_locations);
  inst.taxi_cost = matrix_from_json(j.at("taxi_cost"), inst.num_locations);
  for (const Json& q : j.at("requests")) {
    Request r;
    r.id = q.at("id");
    r.pickup_loc = q.at("pickup").at("loc");
    r.pickup_day = q.at("pickup").at("day");
    r.pickup_open = q.at("pickup").at("open");
    r.pickup_close = q.at("pickup").at("close");
    r.pickup_service = q.at("pickup").at("service");
    r.delivery_loc = q.at("delivery").at("loc");
    r.delivery_day = q.at("delivery").at("day");
    r.delivery_open = q.at("delivery").at("open");
    r.delivery_close = q.at("delivery").at("close");
    r.delivery_service = q.at("delivery").at("service");
    r.delay_penalty = q.at("penalty");
    inst.requests.push_back(r);
  }
  inst.meta = j.value("meta", std::string{});
  const auto problems = validate_instance(inst);
  if (!problems.empty()) throw std::runtime_error("instance json: " + problems.front());
  return inst;
}

void save_instance(const Instance& inst, const std::string& path) {
  write_file(path, instance_to_json(inst));
}

Instance load_instance(const std::string& path) { return instance_from_json(read_file(path)); }

std::string plan_to_json(const Plan& plan, const GraphBundle& graphs) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  Json trucks = Json::array();
  for (const Route& r : plan.trucks) {
    Json t;
    t["agent"] = r.agent;
    t["used"] = !r.empty();
    t["steps"] = route_steps(graphs.truck, r);
    trucks.push_back(std::move(t));
  }
  j["trucks"] = std::move(trucks);
  Json drivers = Json::array();
  for (const Route& r : plan.drivers) {
    Json d;
    d["agent"] = r.agent;
    d["used"] = !r.empty();
    d["steps"] = route_steps(graphs.ltx, r);
    drivers.push_back(std::move(d));
  }
  j["drivers"] = std::move(drivers);
  j["day_off"] = plan.day_off;
  return j.dump(2) + "\n";
}

Plan plan_from_json(const std::string& text, const GraphBundle& graphs) {
  const Json j = Json::parse(text);
  if (j.at("schema_version") != kSchemaVersion)
    throw std::runtime_error("plan json: unsupported schema version");
  const Instance& inst = *graphs.inst;
  Plan plan;
  const auto& tstarts = inst.truck_start;
  const auto& dstarts = inst.driver_start;
  int v = 0;
  for (const Json& t : j.at("trucks")) {
    Route r;
    r.agent = t.at("agent");
    if (t.at("used").get<bool>())
      r.arcs = materialize(graphs.truck, tstarts.at(v), t.at("steps"));
    plan.trucks.push_back(std::move(r));
    ++v;
  }
  int d = 0;
  for (const Json& q : j.at("drivers")) {
    Route r;
    r.agent = q.at("agent");
    if (q.at("used").get<bool>())
      r.arcs = materialize(graphs.ltx, dstarts.at(d), q.at("steps"));
    plan.drivers.push_back(std::move(r));
    ++d;
  }
  plan.day_off = j.at("day_off").get<std::vector<std::vector<std::uint8_t>>>();
  return plan;
}

void save_plan(const Plan& plan, const GraphBundle& graphs, const std::string& path) {
  write_file(path, plan_to_json(plan, graphs));
}

Plan load_plan(const std::string& path, const GraphBundle& graphs) {
  return plan_from_json(read_file(path), graphs);
}

std::string model_to_lp(const MilpModel& model, const std::vector<Cut>* cuts) {
  std::ostringstream out;
  out << "Minimize\n obj:";
  for (int j = 0; j < model.num_vars(); ++j) {
    if (model.obj[j] == 0.0) continue;
    out << (model.obj[j] >= 0 ? " +" : " ") << fmt(model.obj[j]) << " " << model.vars[j].name;
  }
  out << "\nSubject To\n";
  auto write_row = [&](const std::string& name, const std::vector<std::pair<int, double>>& coeffs,
                       char sense, double rhs) {
    out << " " << name << ":";
    for (auto [j, c] : coeffs) {
      out << (c >= 0 ? " +" : " ") << fmt(c) << " " << model.vars[j].name;
    }
    out << (sense == 'L' ? " <= " : sense == 'G' ? " >= " : " = ") << fmt(rhs) << "\n";
  };
  for (const ModelRow& row : model.rows) write_row(row.name, row.coeffs, row.sense, row.rhs);
  if (cuts && !cuts->empty()) {
    out << "\\ cut pool\n";
    for (const Cut& c : *cuts) write_row("cut_" + c.name, c.coeffs, c.sense, c.rhs);
  }
  out << "Bounds\n";
  for (const VarRef& v : model.vars) {
    out << " " << fmt(v.lb) << " <= " << v.name << " <= " << fmt(v.ub) << "\n";
  }
  std::vector<const VarRef*> binaries, generals;
  for (const VarRef& v : model.vars) {
    if (!v.integral) continue;
    (v.lb == 0.0 && v.ub == 1.0 ? binaries : generals).push_back(&v);
  }
  if (!binaries.empty()) {
    out << "Binaries\n";
    for (const VarRef* v : binaries) out << " " << v->name << "\n";
  }
  if (!generals.empty()) {
    out << "Generals\n";
    for (const VarRef* v : generals) out << " " << v->name << "\n";
  }
  out << "End\n";
  return out.str();
}

void emit_lp(const MilpModel& model, const std::string& path, const std::vector<Cut>* cuts) {
  write_file(path, model_to_lp(model, cuts));
}

std::pair<std::vector<double>, int> read_solution(const std::string& path,
                                                  const MilpModel& model) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::unordered_map<std::string, int> index;
  for (int j = 0; j < model.num_vars(); ++j) index[model.vars[j].name] = j;
  std::vector<double> x(model.num_vars(), 0.0);
  int warnings = 0;
  std::string name;
  double value;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == '\\') continue;
    std::istringstream ls(line);
    if (!(ls >> name >> value)) throw std::runtime_error("malformed solution line: " + line);
    auto it = index.find(name);
    if (it == index.end()) {
      ++warnings;
      continue;
    }
    x[it->second] = value;
  }
  return {x, warnings};
}

}  // namespace svrcsp
