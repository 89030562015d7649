#include "svrcsp/instance.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace svrcsp {

std::vector<int> Instance::truck_start_locations() const {
  std::set<int> s(truck_start.begin(), truck_start.end());
  return {s.begin(), s.end()};
}

std::vector<int> Instance::driver_start_locations() const {
  std::set<int> s(driver_start.begin(), driver_start.end());
  return {s.begin(), s.end()};
}

std::vector<int> service_start_instants(const Horizon& h, const Request& r, Side side) {
  const bool pickup = (side == Side::Pickup);
  const int open = pickup ? r.pickup_open : r.delivery_open;
  const int close = pickup ? r.pickup_close : r.delivery_close;
  const int start_day = pickup ? r.pickup_day : r.delivery_day;
  const int service = pickup ? r.pickup_service : r.delivery_service;
  const int I = h.instants_per_day;
  const int total = h.total_instants();

  std::vector<bool> open_time(static_cast<std::size_t>(I), false);
  if (open <= close) {
    for (int t = open; t <= close; ++t) open_time[t] = true;
  } else {
    for (int t = open; t < I; ++t) open_time[t] = true;
    for (int t = 0; t <= close; ++t) open_time[t] = true;
  }

  std::vector<int> out;
  for (int i = start_day * I; i + service <= total; ++i) {
    if (open_time[h.time_of(i)]) out.push_back(i);
  }
  return out;
}

std::int64_t delay_penalty(const Horizon& h, const Request& r, int instant) {
  const auto allowed = service_start_instants(h, r, Side::Delivery);
  if (!std::binary_search(allowed.begin(), allowed.end(), instant)) {
    throw std::invalid_argument("delay_penalty: instant is not a valid delivery start");
  }
  return r.delay_penalty * (h.day_of(instant) - r.delivery_day);
}

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> v;
  const Horizon& h = inst.horizon;
  if (h.days < 1) v.push_back("H must be >= 1");
  if (h.instants_per_day < 2) v.push_back("I must be >= 2");
  if (h.instants_per_day % 2 != 0) v.push_back("I must be even");
  if (inst.num_locations < 1) v.push_back("at least one location required");

  auto loc_ok = [&](int l) { return l >= 0 && l < inst.num_locations; };
  for (std::size_t k = 0; k < inst.truck_start.size(); ++k) {
    if (!loc_ok(inst.truck_start[k]))
      v.push_back("truck " + std::to_string(k) + " has invalid start location");
  }
  for (std::size_t k = 0; k < inst.driver_start.size(); ++k) {
    if (!loc_ok(inst.driver_start[k]))
      v.push_back("driver " + std::to_string(k) + " has invalid start location");
  }

  auto check_matrix = [&](const LocMatrix& m, const char* name) {
    if (m.n != inst.num_locations) {
      v.push_back(std::string(name) + " has wrong dimension");
      return;
    }
    for (int a = 0; a < m.n; ++a) {
      for (int b = 0; b < m.n; ++b) {
        if (a == b && m.at(a, b) != 0)
          v.push_back(std::string(name) + " must be 0 on the diagonal");
        if (a != b && m.at(a, b) < 1)
          v.push_back(std::string(name) + " must be >= 1 off the diagonal");
      }
    }
  };
  check_matrix(inst.truck_time, "truck_time");
  check_matrix(inst.taxi_time, "taxi_time");
  if (inst.truck_cost.n != inst.num_locations) v.push_back("truck_cost has wrong dimension");
  if (inst.taxi_cost.n != inst.num_locations) v.push_back("taxi_cost has wrong dimension");

  const bool horizon_ok = h.days >= 1 && h.instants_per_day >= 2;
  for (const Request& r : inst.requests) {
    const std::string tag = "request " + std::to_string(r.id);
    if (!loc_ok(r.pickup_loc) || !loc_ok(r.delivery_loc)) v.push_back(tag + ": invalid location");
    if (r.pickup_loc == r.delivery_loc) v.push_back(tag + ": pickup equals delivery location");
    if (horizon_ok) {
      if (r.pickup_day < 0 || r.pickup_day >= h.days) v.push_back(tag + ": pickup day out of range");
      if (r.delivery_day < 0 || r.delivery_day >= h.days)
        v.push_back(tag + ": delivery day out of range");
      auto win_ok = [&](int t) { return t >= 0 && t < h.instants_per_day; };
      if (!win_ok(r.pickup_open) || !win_ok(r.pickup_close) || !win_ok(r.delivery_open) ||
          !win_ok(r.delivery_close))
        v.push_back(tag + ": window endpoint out of range");
    }
    if (r.pickup_service < 1 || r.delivery_service < 1) v.push_back(tag + ": service time must be >= 1");
    if (r.delay_penalty < 0) v.push_back(tag + ": penalty must be >= 0");
    if (horizon_ok && r.pickup_service >= 1 && r.delivery_service >= 1) {
      if (service_start_instants(h, r, Side::Pickup).empty())
        v.push_back(tag + ": no feasible pickup start instant");
      if (service_start_instants(h, r, Side::Delivery).empty())
        v.push_back(tag + ": no feasible delivery start instant");
    }
  }
  return v;
}

}  // namespace svrcsp
