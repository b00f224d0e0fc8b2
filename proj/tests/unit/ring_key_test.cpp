#include <gtest/gtest.h>

#include "amsim/overlay/ring_key.hpp"

using amsim::overlay::in_half_open;
using amsim::overlay::in_open;
using amsim::overlay::RingKey;

namespace {

// Walks the ring from a (exclusive) to b, small rings only.
bool walk_contains(unsigned x, unsigned a, unsigned b, unsigned size, bool include_b) {
  if (a == b) return include_b ? true : x != a;
  for (unsigned y = (a + 1) % size;; y = (y + 1) % size) {
    if (y == b) return include_b && x == b;
    if (y == x) return true;
  }
}

}  // namespace

TEST(RingKey, HandCases) {
  EXPECT_TRUE(in_half_open(RingKey(5, 3), RingKey(3, 3), RingKey(6, 3)));
  EXPECT_TRUE(in_half_open(RingKey(1, 3), RingKey(6, 3), RingKey(2, 3)));
  EXPECT_TRUE(in_half_open(RingKey(4, 3), RingKey(4, 3), RingKey(4, 3)));
}

TEST(RingKey, IntervalsMatchRingWalkForAllTriplesAtM3) {
  for (unsigned a = 0; a < 8; ++a) {
    for (unsigned b = 0; b < 8; ++b) {
      for (unsigned x = 0; x < 8; ++x) {
        EXPECT_EQ(in_half_open(RingKey(x, 3), RingKey(a, 3), RingKey(b, 3)), walk_contains(x, a, b, 8, true))
            << x << " in (" << a << "," << b << "]";
        EXPECT_EQ(in_open(RingKey(x, 3), RingKey(a, 3), RingKey(b, 3)), walk_contains(x, a, b, 8, false))
            << x << " in (" << a << "," << b << ")";
      }
    }
  }
}

TEST(RingKey, ArithmeticWrapsModuloRingSize) {
  EXPECT_EQ(RingKey(7, 3) + RingKey(3, 3), RingKey(2, 3));
  EXPECT_EQ(RingKey(255, 8).next(), RingKey(0, 8));
  EXPECT_EQ(RingKey::pow2(31, 32).low64(), 1ULL << 31);
  EXPECT_EQ(RingKey::pow2(32, 32).low64(), 0u);
  EXPECT_EQ(RingKey(0xFFFFFFFFu, 32).plus_pow2(0).low64(), 0u);
}

TEST(RingKey, WideKeysCarryAcrossLimbs) {
  const RingKey a = RingKey::from_string("18446744073709551615", 160);  // 2^64 - 1
  const RingKey b = a.next();
  EXPECT_EQ(b.to_string(), "18446744073709551616");
  EXPECT_EQ(RingKey::pow2(159, 160).plus_pow2(159), RingKey(0, 160));
  EXPECT_LT(a, b);
  EXPECT_EQ(RingKey::from_string(b.to_string(), 160), b);
}
