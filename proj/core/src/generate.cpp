#include "svrcsp/generate.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace svrcsp {

namespace {

// Hand-rolled draws on top of mt19937_64 so the stream is identical on
// every platform (std distributions are not portable).
struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}

  std::uint64_t raw() { return eng(); }
  int below(int n) { return static_cast<int>(raw() % static_cast<std::uint64_t>(n)); }
  double unit() { return (raw() >> 11) * (1.0 / 9007199254740992.0); }
};

}  // namespace

Instance generate(const GenSpec& spec) {
  if (spec.num_locations < 2) throw std::invalid_argument("generate: need at least 2 locations");
  if (spec.num_requests < 0 || spec.num_trucks < 1 || spec.num_drivers < 1)
    throw std::invalid_argument("generate: counts must be positive");
  if (spec.days < 1 || spec.instants_per_day < 2 || spec.instants_per_day % 2 != 0)
    throw std::invalid_argument("generate: horizon must have I even and >= 2");

  Rng rng(spec.seed);
  const int L = spec.num_locations;

  // Seeded planar coordinates with Euclidean distances.
  std::vector<double> xs(L), ys(L);
  for (int l = 0; l < L; ++l) {
    xs[l] = rng.unit() * spec.box_km;
    ys[l] = rng.unit() * spec.box_km;
  }

  Instance inst;
  inst.horizon.days = spec.days;
  inst.horizon.instants_per_day = spec.instants_per_day;
  inst.num_locations = L;
  inst.truck_time.n = inst.truck_cost.n = inst.taxi_time.n = inst.taxi_cost.n = L;
  inst.truck_time.data.assign(static_cast<std::size_t>(L) * L, 0);
  inst.truck_cost.data.assign(static_cast<std::size_t>(L) * L, 0);
  inst.taxi_time.data.assign(static_cast<std::size_t>(L) * L, 0);
  inst.taxi_cost.data.assign(static_cast<std::size_t>(L) * L, 0);
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) {
      if (i == j) continue;
      const double km = std::hypot(xs[i] - xs[j], ys[i] - ys[j]);
      const auto len = static_cast<std::int64_t>(
          std::max(1.0, std::ceil(km / spec.speed_kmh / spec.hours_per_instant)));
      inst.truck_time.data[static_cast<std::size_t>(i) * L + j] = len;
      inst.truck_cost.data[static_cast<std::size_t>(i) * L + j] = len;
      inst.taxi_time.data[static_cast<std::size_t>(i) * L + j] = len;
      inst.taxi_cost.data[static_cast<std::size_t>(i) * L + j] =
          static_cast<std::int64_t>(std::llround(spec.taxi_cost_factor * static_cast<double>(len)));
    }
  }

  for (int v = 0; v < spec.num_trucks; ++v) inst.truck_start.push_back(rng.below(L));
  for (int d = 0; d < spec.num_drivers; ++d) inst.driver_start.push_back(rng.below(L));

  const int H = spec.days, I = spec.instants_per_day;
  const auto min_arrival = [&](int loc) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (int s : inst.truck_start) best = std::min(best, inst.truck_time.at(s, loc));
    return static_cast<int>(best);
  };
  for (int r = 0; r < spec.num_requests; ++r) {
    Request q;
    q.id = r;
    q.pickup_service = 1;
    q.delivery_service = 1;
    for (int attempt = 0;; ++attempt) {
      q.pickup_loc = rng.below(L);
      do {
        q.delivery_loc = rng.below(L);
      } while (q.delivery_loc == q.pickup_loc);
      q.pickup_day = rng.below(H);
      q.delivery_day = q.pickup_day + rng.below(H - q.pickup_day);
      q.pickup_open = rng.below(I);
      q.pickup_close = rng.below(I);  // close < open wraps past midnight
      q.delivery_open = rng.below(I);
      q.delivery_close = rng.below(I);
      if (attempt >= 64) {
        // Rejection budget spent: fall back to all-day windows at day 0.
        q.pickup_day = q.delivery_day = 0;
        q.pickup_open = q.delivery_open = 0;
        q.pickup_close = q.delivery_close = I - 1;
      }
      // Reachability: a truck leaving the nearest depot at instant 0 can
      // complete the pickup and still catch some delivery start.
      const auto pstarts = service_start_instants(inst.horizon, q, Side::Pickup);
      const int arrive = min_arrival(q.pickup_loc);
      int pickup_done = -1;
      for (int s : pstarts) {
        if (s >= arrive) {
          pickup_done = s + q.pickup_service;
          break;
        }
      }
      if (pickup_done >= 0) {
        const int haul = static_cast<int>(inst.truck_time.at(q.pickup_loc, q.delivery_loc));
        bool reachable = false;
        for (int s : service_start_instants(inst.horizon, q, Side::Delivery)) {
          reachable = reachable || s >= pickup_done + haul;
        }
        if (reachable) break;
      }
      if (attempt >= 64) throw std::logic_error("generate: horizon too short for any request");
    }
    q.delay_penalty = 1 + rng.below(spec.max_penalty);
    inst.requests.push_back(q);
  }

  std::ostringstream meta;
  meta << "generated seed=" << spec.seed << " L=" << L << " R=" << spec.num_requests
       << " H=" << H << " I=" << I << " V=" << spec.num_trucks << " D=" << spec.num_drivers
       << " box_km=" << spec.box_km << " speed_kmh=" << spec.speed_kmh
       << " hours_per_instant=" << spec.hours_per_instant
       << " taxi_cost_factor=" << spec.taxi_cost_factor << " max_penalty=" << spec.max_penalty
       << " windows=uniform-reachable penalties=uniform[1," << spec.max_penalty << "]";
  inst.meta = meta.str();

  const auto problems = validate_instance(inst);
  if (!problems.empty()) throw std::logic_error("generate: invalid instance: " + problems.front());
  return inst;
}

GenSpec preset(const std::string& name) {
  GenSpec s;
  if (name == "desk" || name.empty()) {
    return s;  // defaults above
  }
  if (name == "tiny") {
    s.num_locations = 2;
    s.num_requests = 2;
    s.days = 1;
    s.instants_per_day = 8;
    s.num_trucks = 2;
    s.num_drivers = 2;
    return s;
  }
  if (name == "s1" || name == "s2" || name == "s4") {
    s.num_locations = name == "s4" ? 6 : 3;
    s.num_requests = name == "s2" ? 8 : 5;
    s.days = 7;
    s.instants_per_day = 24;
    s.hours_per_instant = 1.0;
    s.num_trucks = 1;
    s.num_drivers = 2;
    return s;
  }
  if (name == "s3") {
    s.num_locations = 3;
    s.num_requests = 9;
    s.days = 7;
    s.instants_per_day = 24;
    s.hours_per_instant = 1.0;
    s.num_trucks = 2;
    s.num_drivers = 4;
    return s;
  }
  if (name == "s5") {
    s.num_locations = 3;
    s.num_requests = 40;
    s.days = 40;
    s.instants_per_day = 24;
    s.hours_per_instant = 1.0;
    s.num_trucks = 1;
    s.num_drivers = 3;
    return s;
  }
  throw std::invalid_argument("preset: unknown name " + name);
}

}  // namespace svrcsp
