#include "support/example1.hpp"

namespace svrcsp::testing {

Instance example1() {
  Instance inst;
  inst.horizon = {1, 8};
  inst.num_locations = 2;
  inst.truck_start = {0, 1};
  inst.driver_start = {0, 1};
  auto mat = [](std::int64_t off) {
    LocMatrix m;
    m.n = 2;
    m.data = {0, off, off, 0};
    return m;
  };
  inst.truck_time = mat(1);
  inst.truck_cost = mat(1);
  inst.taxi_time = mat(1);
  inst.taxi_cost = mat(2);

  Request r1;
  r1.id = 0;
  r1.pickup_loc = 0;
  r1.delivery_loc = 1;
  r1.pickup_day = 0;
  r1.delivery_day = 0;
  r1.pickup_open = 0;
  r1.pickup_close = 2;
  r1.delivery_open = 6;
  r1.delivery_close = 2;  // wraps past midnight
  r1.delay_penalty = 1;

  Request r2;
  r2.id = 1;
  r2.pickup_loc = 1;
  r2.delivery_loc = 0;
  r2.pickup_day = 0;
  r2.delivery_day = 0;
  r2.pickup_open = 3;
  r2.pickup_close = 5;
  r2.delivery_open = 3;
  r2.delivery_close = 5;
  r2.delay_penalty = 1;

  inst.requests = {r1, r2};
  inst.meta = "example1";
  return inst;
}

}  // namespace svrcsp::testing
