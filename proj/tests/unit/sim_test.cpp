#include <gtest/gtest.h>

#include <set>
#include <string>
#include <vector>

#include "amsim/sim/event_kernel.hpp"
#include "amsim/sim/rng.hpp"

using amsim::sim::EventKernel;
using amsim::sim::Rng;

TEST(EventKernel, SameTimeEventsRunInSchedulingOrder) {
  EventKernel<std::int64_t> k;
  std::string order;
  k.schedule_at(5, [&] { order += 'b'; });
  k.schedule_at(1, [&] { order += 'a'; });
  k.schedule_at(5, [&] { order += 'c'; });
  k.schedule_at(5, [&] { order += 'd'; });
  k.run();
  EXPECT_EQ(order, "abcd");
  EXPECT_EQ(k.now(), 5);
}

TEST(EventKernel, CancelledEventsDoNotRun) {
  EventKernel<std::int64_t> k;
  int ran = 0;
  auto h = k.schedule_at(3, [&] { ++ran; });
  k.schedule_at(4, [&] { ran += 10; });
  EXPECT_TRUE(k.cancel(h));
  EXPECT_FALSE(k.cancel(h));
  k.run();
  EXPECT_EQ(ran, 10);
}

TEST(EventKernel, RunUntilStopsAtBoundaryInclusive) {
  EventKernel<std::int64_t> k;
  std::vector<std::int64_t> seen;
  for (std::int64_t t : {10, 20, 30}) k.schedule_at(t, [&, t] { seen.push_back(t); });
  k.run_until(20);
  EXPECT_EQ(seen, (std::vector<std::int64_t>{10, 20}));
  EXPECT_EQ(k.now(), 20);
  k.run_until(25);
  EXPECT_EQ(k.now(), 25);
  EXPECT_EQ(k.pending(), 1u);
}

TEST(EventKernel, StopHaltsTheLoop) {
  EventKernel<double> k;
  int ran = 0;
  k.schedule_at(1.0, [&] { ++ran; k.stop(); });
  k.schedule_at(2.0, [&] { ++ran; });
  k.run();
  EXPECT_EQ(ran, 1);
  EXPECT_TRUE(k.stopped());
}

TEST(EventKernel, RejectsThePast) {
  EventKernel<std::int64_t> k;
  k.schedule_at(10, [] {});
  k.run();
  EXPECT_THROW(k.schedule_at(5, [] {}), std::logic_error);
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    differs |= x != c.next();
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, UniformIntStaysInRange) {
  Rng r(7);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 5000; ++i) {
    const auto v = r.uniform_int(-3, 3);
    ASSERT_GE(v, -3);
    ASSERT_LE(v, 3);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(Rng, DerivedSeedsDependOnEveryTag) {
  using amsim::sim::derive_seed;
  using amsim::sim::hash_tag;
  EXPECT_EQ(derive_seed(1, {hash_tag("churn"), 2}), derive_seed(1, {hash_tag("churn"), 2}));
  EXPECT_NE(derive_seed(1, {hash_tag("churn"), 2}), derive_seed(1, {hash_tag("churn"), 3}));
  EXPECT_NE(derive_seed(1, {hash_tag("churn")}), derive_seed(1, {hash_tag("workload")}));
  EXPECT_NE(derive_seed(1, {hash_tag("churn")}), derive_seed(2, {hash_tag("churn")}));
}
