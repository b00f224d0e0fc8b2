#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "amsim/scenario/churn.hpp"
#include "amsim/scenario/link_speed.hpp"
#include "amsim/scenario/trace.hpp"
#include "amsim/scenario/workload.hpp"

using namespace amsim::scenario;

namespace {

constexpr TimeMs kMinute = 60'000;

}  // namespace

TEST(Churn, LowChurnKeepsEveryoneUpForFortyMinutes) {
  ChurnPattern p;
  p.kind = ChurnKind::low;
  const auto s = build_churn_schedule(p, 16, 40 * kMinute);
  for (const auto& node : s) EXPECT_TRUE(node.empty());
}

TEST(Churn, HighChurnDrawsStayInTheirRanges) {
  ChurnPattern p;
  p.kind = ChurnKind::high;
  p.seed = 5;
  const auto s = build_churn_schedule(p, 300, 10'000'000);
  std::size_t draws = 0;
  for (const auto& node : s) {
    TimeMs up = 0;
    for (const auto& d : node) {
      EXPECT_GE(d.down_at - up, 160'000);
      EXPECT_LE(d.down_at - up, 240'000);
      EXPECT_GE(d.up_at - d.down_at, 80'000);
      EXPECT_LE(d.up_at - d.down_at, 120'000);
      up = d.up_at;
      draws += 2;
    }
  }
  EXPECT_GE(draws, 10'000u);
}

TEST(Churn, SameSeedSameSchedule) {
  ChurnPattern p;
  p.kind = ChurnKind::locally_varying;
  p.seed = 9;
  const auto a = build_churn_schedule(p, 40, 5'000'000);
  const auto b = build_churn_schedule(p, 40, 5'000'000);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t n = 0; n < a.size(); ++n) {
    ASSERT_EQ(a[n].size(), b[n].size());
    for (std::size_t i = 0; i < a[n].size(); ++i) {
      EXPECT_EQ(a[n][i].down_at, b[n][i].down_at);
      EXPECT_EQ(a[n][i].up_at, b[n][i].up_at);
    }
  }
}

TEST(Churn, ExemptNodesNeverGoDown) {
  ChurnPattern p;
  p.kind = ChurnKind::high;
  std::vector<bool> exempt(8, false);
  exempt[0] = true;
  const auto s = build_churn_schedule(p, 8, 3'000'000, exempt);
  EXPECT_TRUE(s[0].empty());
  for (std::size_t n = 1; n < 8; ++n) EXPECT_FALSE(s[n].empty());
}

TEST(Churn, LocallyVaryingQuarterIsQuiet) {
  ChurnPattern p;
  p.kind = ChurnKind::locally_varying;
  std::vector<bool> exempt(17, false);
  exempt[0] = true;
  const auto s = build_churn_schedule(p, 17, 40 * kMinute, exempt);
  std::size_t quiet = 0;
  for (std::size_t n = 1; n < s.size(); ++n) quiet += s[n].empty();
  EXPECT_EQ(quiet, 4u);
}

TEST(Churn, TemporallyVaryingAlternatesPhases) {
  ChurnPattern p;
  p.kind = ChurnKind::temporally_varying;
  const auto s = build_churn_schedule(p, 32, 4'000'000);
  std::map<TimeMs, int> downs_per_phase;
  for (const auto& node : s) {
    for (const auto& d : node) ++downs_per_phase[d.down_at / p.phase_ms];
  }
  EXPECT_EQ(downs_per_phase.count(0), 0u);
  EXPECT_GT(downs_per_phase[1], 32);
  EXPECT_GT(downs_per_phase[3], 32);
  // a low phase only sees nodes that were already down when it began
  EXPECT_EQ(downs_per_phase.count(2), 0u);
  EXPECT_TRUE(low_phase_at(p, 0));
  EXPECT_FALSE(low_phase_at(p, 1'000'000));
  EXPECT_TRUE(low_phase_at(p, 2'500'000));
}

TEST(Churn, DocChurnAddsInitialOnTime) {
  const auto p = doc_high_churn(3);
  const auto s = build_churn_schedule(p, 200, 3'600'000);
  for (const auto& node : s) {
    ASSERT_FALSE(node.empty());
    EXPECT_GE(node[0].down_at, 32'000 + 15'000);
    EXPECT_LE(node[0].down_at, 42'000 + 25'000);
    for (std::size_t i = 0; i < node.size(); ++i) {
      EXPECT_GE(node[i].up_at - node[i].down_at, 25'000);
      EXPECT_LE(node[i].up_at - node[i].down_at, 29'000);
      if (i > 0) {
        EXPECT_GE(node[i].down_at - node[i - 1].up_at, 32'000);
        EXPECT_LE(node[i].down_at - node[i - 1].up_at, 42'000);
      }
    }
  }
}

TEST(Workload, LightIsTenBatchesFiveMinutesApart) {
  Workload w;
  w.kind = WorkloadKind::light;
  const auto b = build_workload(w, 32);
  ASSERT_EQ(b.size(), 10u);
  for (std::size_t i = 0; i < b.size(); ++i) {
    EXPECT_EQ(b[i].anchor, Anchor::absolute);
    EXPECT_EQ(b[i].delay, static_cast<TimeMs>(i) * 300'000);
    EXPECT_EQ(b[i].keys.size(), 1u);
  }
}

TEST(Workload, VariableIsTenBurstsOfHundred) {
  Workload w;
  w.kind = WorkloadKind::variable;
  const auto b = build_workload(w, 32);
  EXPECT_EQ(lookup_count(b), 1000u);
  std::size_t gaps = 0;
  for (const auto& batch : b) {
    if (batch.delay == 300'000) ++gaps;
  }
  EXPECT_EQ(gaps, 9u);
}

TEST(Workload, HeavyIsSequentialChain) {
  Workload w;
  w.kind = WorkloadKind::heavy;
  const auto b = build_workload(w, 32);
  EXPECT_EQ(lookup_count(b), 6000u);
  for (const auto& batch : b) {
    EXPECT_EQ(batch.anchor, Anchor::after_previous);
    EXPECT_EQ(batch.delay, 0);
  }
  w.seed = 2;
  EXPECT_NE(build_workload(w, 32)[0].keys[0], b[0].keys[0]);
}

TEST(Trace, EmptyFileEmptyWorkload) {
  std::istringstream in("# header only\n\n");
  EXPECT_TRUE(parse_trace(in).empty());
  EXPECT_TRUE(expand_trace({}, 32).empty());
}

TEST(Trace, DataRecordExpandsPerLevelThenData) {
  std::istringstream in("100,data,2,fileA\n");
  const auto records = parse_trace(in);
  ASSERT_EQ(records.size(), 1u);
  const auto b = expand_trace(records, 32);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[0].anchor, Anchor::absolute);
  EXPECT_EQ(b[0].delay, 100);
  EXPECT_EQ(b[0].mode, BatchMode::parallel);
  EXPECT_EQ(b[1].anchor, Anchor::after_previous);
  EXPECT_EQ(b[1].mode, BatchMode::parallel);
  EXPECT_EQ(b[2].mode, BatchMode::sequential);
  for (const auto& batch : b) EXPECT_EQ(batch.keys.size(), 4u);
  EXPECT_NE(b[0].keys[0], b[1].keys[0]);
}

TEST(Trace, MetaRecordHasNoDataBatch) {
  std::istringstream in("0,meta,3,x\n");
  EXPECT_EQ(expand_trace(parse_trace(in), 32).size(), 3u);
}

TEST(Trace, ErrorsCarryLineNumbers) {
  {
    std::istringstream in("10,meta,1,a\n5,meta,1,b\n");
    try {
      parse_trace(in);
      FAIL() << "out-of-order trace accepted";
    } catch (const TraceError& e) {
      EXPECT_EQ(e.line(), 2u);
    }
  }
  {
    std::istringstream in("# c\n10,meta,1,a\n20,write,1,b\n");
    try {
      parse_trace(in);
      FAIL() << "bad kind accepted";
    } catch (const TraceError& e) {
      EXPECT_EQ(e.line(), 3u);
    }
  }
  std::istringstream short_line("10,meta\n");
  EXPECT_THROW(parse_trace(short_line), TraceError);
}

TEST(Trace, ReplicaKeysAreEvenlySpread) {
  const RingKey base(5, 8);
  const auto keys = replica_keys(base, 4);
  ASSERT_EQ(keys.size(), 4u);
  for (unsigned r = 0; r < 4; ++r) EXPECT_EQ(keys[r], RingKey((5 + r * 64) % 256, 8));
}

TEST(Trace, GeneratorRoundTrips) {
  TraceGenParams p;
  p.records = 50;
  const auto recs = generate_trace(p);
  std::ostringstream out;
  write_trace(out, recs);
  std::istringstream in(out.str());
  const auto back = parse_trace(in);
  ASSERT_EQ(back.size(), recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(back[i].offset_ms, recs[i].offset_ms);
    EXPECT_EQ(back[i].file_id, recs[i].file_id);
  }
}

TEST(LinkSpeed, StaticKinds) {
  const LinkSpeedSchedule sb(NetworkKind::server_bottleneck, 4);
  EXPECT_EQ(sb.client(0).bandwidth_bps, 78e6);
  EXPECT_EQ(sb.server(3, 100).bandwidth_bps, 3e6);
  EXPECT_EQ(sb.server(3, 100).latency_s, 0.020);
  const LinkSpeedSchedule cb(NetworkKind::client_bottleneck, 4);
  EXPECT_EQ(cb.client(0).bandwidth_bps, 3e6);
  EXPECT_EQ(cb.server(0, 0).bandwidth_bps, 22e6);
  EXPECT_THROW(cb.server(4, 0), std::out_of_range);
}

TEST(LinkSpeed, VaryingLinksRedrawPerPeriod) {
  const LinkSpeedSchedule v(NetworkKind::temporally_varying, 4, 11);
  const VaryingLinks cfg;
  bool changed = false;
  for (int period = 0; period < 200; ++period) {
    const double t = period * cfg.period_s;
    const auto a = v.server(1, t);
    EXPECT_EQ(a.bandwidth_bps, v.server(1, t + cfg.period_s * 0.9).bandwidth_bps);
    EXPECT_GE(a.bandwidth_bps, cfg.min_bandwidth_bps);
    EXPECT_LE(a.bandwidth_bps, cfg.max_bandwidth_bps);
    const double u = (a.bandwidth_bps - cfg.min_bandwidth_bps) / (cfg.max_bandwidth_bps - cfg.min_bandwidth_bps);
    EXPECT_NEAR(a.latency_s, cfg.max_latency_s * (1 - u), 1e-12);
    changed |= a.bandwidth_bps != v.server(1, t + cfg.period_s).bandwidth_bps;
  }
  EXPECT_TRUE(changed);
}
