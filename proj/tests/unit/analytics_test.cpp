#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "amsim/analytics/expected_time.hpp"
#include "amsim/analytics/stats.hpp"
#include "amsim/analytics/ulm.hpp"

using namespace amsim::analytics;

namespace {

// Retry until success, at most n retries. Time of a run that never succeeds
// counts as 0, which is what the truncated sum weighs.
double monte_carlo_elt(double lt, double let, double p, unsigned n, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution fail(p);
  double total = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    for (unsigned i = 0; i <= n; ++i) {
      if (!fail(rng)) {
        total += lt + i * let;
        break;
      }
    }
  }
  return total / static_cast<double>(samples);
}

}  // namespace

TEST(ExpectedLookupTime, NoFailuresGivesMeanLookupTime) {
  EXPECT_EQ(expected_lookup_time(412.5, 90, 0.0, 16), 412.5);
  EXPECT_EQ(expected_lookup_time(412.5, 90, 0.0, 0), 412.5);
}

TEST(ExpectedLookupTime, HandEvaluation) {
  const double hand = 0.5 * (500 + 0.5 * 600 + 0.25 * 700 + 0.125 * 800);
  EXPECT_NEAR(expected_lookup_time(500, 100, 0.5, 3), hand, 1e-9);
  EXPECT_NEAR(hand, 537.5, 1e-12);
}

TEST(ExpectedLookupTime, SingleTerm) {
  EXPECT_NEAR(expected_lookup_time(500, 100, 0.3, 0), 500 * 0.7, 1e-9);
}

TEST(ExpectedLookupTime, CertainFailureIsRejected) {
  EXPECT_THROW(expected_lookup_time(500, 100, 1.0, 3), std::invalid_argument);
  EXPECT_THROW(expected_lookup_time(500, 100, -0.1, 3), std::invalid_argument);
}

TEST(ExpectedLookupTime, MonotoneInPLetAndN) {
  double prev = 0;
  for (double p = 0; p < 0.95; p += 0.05) {
    const double v = expected_lookup_time(300, 200, p, 16);
    if (p > 0) EXPECT_GE(v, prev - 1e-9);
    prev = v;
  }
  EXPECT_LE(expected_lookup_time(300, 100, 0.4, 16), expected_lookup_time(300, 200, 0.4, 16));
  EXPECT_LE(expected_lookup_time(300, 100, 0.4, 3), expected_lookup_time(300, 100, 0.4, 4));
}

TEST(ExpectedLookupTime, MatchesRetrySimulation) {
  for (double p : {0.1, 0.5, 0.9}) {
    const double mc = monte_carlo_elt(500, 100, p, 16, 1'000'000, 99);
    EXPECT_NEAR(expected_lookup_time(500, 100, p, 16) / mc, 1.0, 0.01) << "p=" << p;
  }
}

TEST(Summarize, OneToFive) {
  const auto d = summarize({5, 3, 1, 4, 2});
  EXPECT_EQ(d.n, 5u);
  EXPECT_EQ(d.mean, 3.0);
  EXPECT_EQ(d.q2, 3.0);
  EXPECT_EQ(d.min, 1.0);
  EXPECT_EQ(d.max, 5.0);
  EXPECT_EQ(d.q1, 2.0);
  EXPECT_EQ(d.q3, 4.0);
  EXPECT_NEAR(d.s, std::sqrt(2.5), 1e-12);
  EXPECT_NEAR(d.ci90, 1.645 * std::sqrt(2.5) / std::sqrt(5.0), 1e-12);
}

TEST(Summarize, ConstantHasNoSpread) {
  const auto d = summarize({7, 7, 7, 7});
  EXPECT_EQ(d.s, 0.0);
  EXPECT_EQ(d.ci90, 0.0);
  EXPECT_THROW(summarize({}), std::invalid_argument);
}

TEST(Summarize, LargeFixtureQuartiles) {
  std::vector<double> v;
  std::mt19937_64 rng(720);
  std::exponential_distribution<double> exp(1.0 / 400);
  for (int i = 0; i < 720; ++i) v.push_back(std::round(exp(rng)));
  const auto d = summarize(v);
  std::sort(v.begin(), v.end());
  // positions (n - 1) q: 179.75, 359.5, 539.25
  EXPECT_NEAR(d.q1, v[179] + 0.75 * (v[180] - v[179]), 1e-9);
  EXPECT_NEAR(d.q2, (v[359] + v[360]) / 2, 1e-9);
  EXPECT_NEAR(d.q3, v[539] + 0.25 * (v[540] - v[539]), 1e-9);
  EXPECT_EQ(d.min, v.front());
  EXPECT_EQ(d.max, v.back());
}

TEST(Nsd, IdenticalRunsAreZero) {
  EXPECT_EQ(nsd(std::vector<std::vector<double>>{{400, 500, 450}, {400, 500, 450}, {400, 500, 450}}), 0.0);
}

TEST(Nsd, ConstructedCase) {
  // every window holds {100, 200, 300} across runs: sqrt(20000 / 3) / 200
  const double expected = std::sqrt(20000.0 / 3) / 200;
  EXPECT_NEAR(nsd(std::vector<std::vector<double>>{{100, 100}, {200, 200}, {300, 300}}), expected, 1e-12);
  EXPECT_NEAR(expected, 0.408, 1e-3);
}

TEST(Nsd, SkipsMissingAndZeroWindowsAndTruncates) {
  using O = std::optional<double>;
  const std::vector<std::vector<O>> runs{{O(100), std::nullopt, O(0), O(10)}, {O(300), O(5), O(0)}};
  // only window 0 is usable: {100, 300}
  EXPECT_NEAR(nsd(runs), 100.0 / 200.0, 1e-12);
  EXPECT_THROW(nsd(std::vector<std::vector<double>>{{1, 2}}), std::invalid_argument);
  EXPECT_THROW(nsd(std::vector<std::vector<O>>{{std::nullopt}, {O(1)}}), std::invalid_argument);
}

TEST(Normalize, RatioOfMeans) {
  EXPECT_EQ(normalize({3, 5}, {3, 5}), 1.0);
  EXPECT_NEAR(normalize({445}, {613}), 445.0 / 613.0, 1e-12);
  EXPECT_NEAR(normalize({445}, {613}), 0.726, 5e-4);
  EXPECT_EQ(normalize({0, 0}, {10}), 0.0);
  EXPECT_THROW(normalize({1}, {0}), std::invalid_argument);
}

TEST(Ulm, AllSuccessWindowElsIsMeanLookupTime) {
  std::vector<LookupRecord> recs{{0, false, 300}, {1000, false, 500}};
  const auto w = window_aggregate(recs, {}, 300'000);
  ASSERT_EQ(w.size(), 1u);
  ASSERT_TRUE(w[0].elt.has_value());
  EXPECT_NEAR(*w[0].elt, 400.0, 1e-9);
  EXPECT_EQ(w[0].ler, 0.0);
}

TEST(Ulm, AllFailureWindowHasNoElt) {
  std::vector<LookupRecord> recs{{0, true, 700}, {10, true, 600}};
  const auto w = window_aggregate(recs, {}, 300'000);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_FALSE(w[0].elt.has_value());
  EXPECT_EQ(w[0].ler, 1.0);
}

TEST(Ulm, WindowsAlignToFirstIssueAndSkipEmpty) {
  std::vector<LookupRecord> recs{{5000, false, 100}, {5000 + 1000, true, 50}, {5000 + 2 * 1000 + 10, false, 300}};
  std::vector<ByteSample> bytes{{4000, 999}, {5000, 10}, {5999, 20}, {6000, 40}, {7010, 80}, {7500, 160}};
  const auto w = window_aggregate(recs, bytes, 1000);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[0].from, 5000);
  EXPECT_EQ(w[0].nu, 30u);  // the sample before the first lookup belongs to no window
  EXPECT_EQ(w[0].lookups, 1u);
  EXPECT_EQ(w[1].from, 6000);
  EXPECT_FALSE(w[1].elt.has_value());
  EXPECT_EQ(w[1].nu, 40u);
  EXPECT_EQ(w[2].from, 7000);
  EXPECT_EQ(w[2].nu, 240u);

  std::vector<LookupRecord> sparse{{0, false, 100}, {5500, false, 100}};
  const auto ws = window_aggregate(sparse, {}, 1000);
  ASSERT_EQ(ws.size(), 2u);
  EXPECT_EQ(ws[1].from, 5000);
}

TEST(Ulm, MixedWindowUsesFailureRate) {
  std::vector<LookupRecord> recs{{0, false, 100}, {1, false, 300}, {2, true, 50}, {3, true, 150}};
  const auto w = window_aggregate(recs, {}, 300'000, 16);
  ASSERT_EQ(w.size(), 1u);
  double hand = 0;
  for (unsigned i = 0; i <= 16; ++i) hand += (200.0 + i * 100.0) * 0.5 * std::pow(0.5, i);
  EXPECT_NEAR(*w[0].elt, hand, 1e-9);
  EXPECT_NEAR(holistic_elt(recs, 16), hand, 1e-9);
}

TEST(Ulm, HolisticNeedsASuccess) {
  EXPECT_THROW(holistic_elt({{0, true, 10}}), std::invalid_argument);
  EXPECT_EQ(holistic_elt({{0, false, 250}, {5, false, 250}}), 250.0);
}
