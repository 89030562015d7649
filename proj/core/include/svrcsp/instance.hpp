#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace svrcsp {

// Planning horizon: H calendar days, each discretised into I instants.
// Valid instants are 0..I*H inclusive; I*H is the closing column and
// never starts a service.
struct Horizon {
  int days = 0;          // H
  int instants_per_day = 0;  // I

  int total_instants() const { return days * instants_per_day; }
  int day_of(int instant) const { return instant / instants_per_day; }
  int time_of(int instant) const { return instant % instants_per_day; }
};

enum class Side { Pickup, Delivery };

struct Request {
  int id = -1;
  int pickup_loc = -1;
  int delivery_loc = -1;
  int pickup_day = 0;
  int delivery_day = 0;
  int pickup_open = 0;    // a^P
  int pickup_close = 0;   // b^P, may wrap past midnight when close < open
  int delivery_open = 0;
  int delivery_close = 0;
  int pickup_service = 1;
  int delivery_service = 1;
  std::int64_t delay_penalty = 0;  // per day of delay
};

// Dense square matrix over locations.
struct LocMatrix {
  int n = 0;
  std::vector<std::int64_t> data;

  LocMatrix() = default;
  explicit LocMatrix(int size, std::int64_t fill = 0)
      : n(size), data(static_cast<std::size_t>(size) * size, fill) {}

  std::int64_t& at(int from, int to) { return data[static_cast<std::size_t>(from) * n + to]; }
  std::int64_t at(int from, int to) const { return data[static_cast<std::size_t>(from) * n + to]; }
};

struct Instance {
  Horizon horizon;
  int num_locations = 0;
  std::vector<int> truck_start;   // start location per truck
  std::vector<int> driver_start;  // start location per driver
  std::vector<Request> requests;
  LocMatrix truck_time;  // len^V, instants
  LocMatrix truck_cost;  // cost^V
  LocMatrix taxi_time;   // len^T
  LocMatrix taxi_cost;   // cost^T
  std::string meta;  // free-form provenance (generator spec, etc.)

  int num_trucks() const { return static_cast<int>(truck_start.size()); }
  int num_drivers() const { return static_cast<int>(driver_start.size()); }
  int num_requests() const { return static_cast<int>(requests.size()); }

  // Distinct start locations, in increasing order.
  std::vector<int> truck_start_locations() const;
  std::vector<int> driver_start_locations() const;
};

// Instants at which the given service of r may begin.  A window with
// close < open wraps past midnight; the wrapped tail is open on the
// request's own start day and the head on the last day of the horizon.
std::vector<int> service_start_instants(const Horizon& h, const Request& r, Side side);

// Penalty charged when the delivery of r starts at `instant`.
// `instant` must belong to the delivery start-instant set.
std::int64_t delay_penalty(const Horizon& h, const Request& r, int instant);

// Structural validation; returns human-readable violations, empty if ok.
std::vector<std::string> validate_instance(const Instance& inst);

}  // namespace svrcsp
