#include "doctest.h"
#include "support/example1.hpp"
#include "svrcsp/instance.hpp"

using namespace svrcsp;

TEST_CASE("horizon arithmetic") {
  Horizon h{2, 8};
  CHECK(h.total_instants() == 16);
  CHECK(h.day_of(0) == 0);
  CHECK(h.day_of(7) == 0);
  CHECK(h.day_of(8) == 1);
  CHECK(h.time_of(8) == 0);
  CHECK(h.time_of(15) == 7);
}

TEST_CASE("service start instants, plain window") {
  const Instance inst = testing::example1();
  const Request& r1 = inst.requests[0];
  const Request& r2 = inst.requests[1];
  CHECK(service_start_instants(inst.horizon, r1, Side::Pickup) == std::vector<int>{0, 1, 2});
  CHECK(service_start_instants(inst.horizon, r2, Side::Pickup) == std::vector<int>{3, 4, 5});
  CHECK(service_start_instants(inst.horizon, r2, Side::Delivery) == std::vector<int>{3, 4, 5});
}

TEST_CASE("service start instants, wrapped window") {
  const Instance inst = testing::example1();
  // [6,2] opens during [0,2] and [6,8) on day 0.
  CHECK(service_start_instants(inst.horizon, inst.requests[0], Side::Delivery) ==
        std::vector<int>{0, 1, 2, 6, 7});
}

TEST_CASE("wrapped window over a two-day horizon") {
  Instance inst = testing::example1();
  inst.horizon.days = 2;
  Request& r1 = inst.requests[0];
  r1.delivery_day = 0;
  // Window [6,2] starting day 0: partially open on day 0 head, open
  // [6..2] across midnight, again on day 1.
  const auto got = service_start_instants(inst.horizon, r1, Side::Delivery);
  CHECK(got == std::vector<int>{0, 1, 2, 6, 7, 8, 9, 10, 14, 15});
}

TEST_CASE("late service start must fit the horizon") {
  Instance inst = testing::example1();
  Request& r2 = inst.requests[1];
  r2.delivery_open = 7;
  r2.delivery_close = 7;
  r2.delivery_service = 2;  // 7 + 2 > 8
  CHECK(service_start_instants(inst.horizon, r2, Side::Delivery).empty());
}

TEST_CASE("delay penalty by day") {
  Instance inst = testing::example1();
  inst.horizon.days = 2;
  const Request& r2 = inst.requests[1];
  CHECK(delay_penalty(inst.horizon, r2, 3) == 0);
  CHECK(delay_penalty(inst.horizon, r2, 8 + 3) == r2.delay_penalty);
  CHECK_THROWS(delay_penalty(inst.horizon, r2, 0));  // not a valid start
}

TEST_CASE("instance validation") {
  Instance inst = testing::example1();
  CHECK(validate_instance(inst).empty());
  inst.horizon.instants_per_day = 7;  // odd
  CHECK_FALSE(validate_instance(inst).empty());
  inst = testing::example1();
  inst.requests[0].pickup_loc = 9;
  CHECK_FALSE(validate_instance(inst).empty());
}
