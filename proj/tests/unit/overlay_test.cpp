#include <gtest/gtest.h>

#include <algorithm>
#include <memory>
#include <optional>

#include "amsim/experiment/overlay_experiment.hpp"
#include "amsim/overlay/overlay.hpp"
#include "amsim/overlay/snapshot.hpp"
#include "ring_fixture.hpp"

using namespace amsim::overlay;
using amsim::sim::EventKernel;
using amsim::sim::TimeMs;
using amsim::testing::Ring;

TEST(Overlay, SingleNodeRingOwnsEveryKey) {
  Ring r({42}, 8);
  r.overlay->create_ring(0);
  for (std::uint64_t key : {0u, 41u, 42u, 43u, 255u}) {
    const auto res = r.lookup(0, key);
    EXPECT_FALSE(res.failed);
    EXPECT_EQ(res.result, 0u);
    EXPECT_EQ(res.hops, 0);
  }
}

TEST(Overlay, ThreeNodeLookupMatchesBruteForce) {
  Ring r({1, 3, 6}, 3);
  r.converge();
  const auto res = r.lookup(0, 4);
  EXPECT_FALSE(res.failed);
  EXPECT_EQ(r.overlay->node(res.result).id, RingKey(6, 3));
  for (NodeIndex origin = 0; origin < 3; ++origin) {
    for (std::uint64_t key = 0; key < 8; ++key) {
      EXPECT_EQ(r.lookup(origin, key).result, r.truth.successor_of(key)) << "origin " << origin << " key " << key;
    }
  }
}

TEST(Overlay, DeadRoutingHopFailsAfterTimeout) {
  Ring r({10, 80, 150, 220}, 8);
  r.converge();
  r.overlay->kill(2);  // id 150, the first hop from 10 towards 200
  const auto res = r.lookup(0, 200);
  const auto& cfg = r.overlay->config();
  EXPECT_TRUE(res.failed);
  EXPECT_EQ(res.dead_peer, std::optional<NodeIndex>(2));
  EXPECT_EQ(res.elapsed, cfg.timeout_ms);
}

TEST(Overlay, DeadLookupResultFailsAfterOneHopAndTimeout) {
  Ring r({10, 80, 150, 220}, 8);
  r.converge();
  r.overlay->kill(3);  // id 220 owns key 200; 150 answers, the confirmation ping times out
  const auto res = r.lookup(0, 200);
  const auto& cfg = r.overlay->config();
  EXPECT_TRUE(res.failed);
  EXPECT_EQ(res.dead_peer, std::optional<NodeIndex>(3));
  EXPECT_EQ(res.elapsed, 2 * cfg.link_latency_ms + cfg.timeout_ms);
}

TEST(Overlay, StableRingStabilizeIsNonEffective) {
  Ring r({2, 5}, 3);
  r.converge();
  EXPECT_EQ(r.maintain(0, MaintenanceOp::stabilize), Outcome::non_effective);
  EXPECT_EQ(r.maintain(1, MaintenanceOp::stabilize), Outcome::non_effective);
}

TEST(Overlay, StabilizeAdoptsNewlyJoinedSuccessor) {
  Ring r({3, 6, 4}, 3);
  r.converge();
  r.overlay->kill(2);
  r.overlay->mutable_node(0).peers.successor = 1;
  r.overlay->mutable_node(0).peers.successor_list = {1};
  r.overlay->mutable_node(1).peers.successor = 0;
  r.overlay->mutable_node(1).peers.successor_list = {0};
  r.overlay->mutable_node(1).peers.predecessor = 0;
  r.overlay->mutable_node(0).peers.predecessor = 1;
  r.overlay->bring_up(2);
  bool joined = false;
  r.overlay->join(2, 0, [&](bool ok) { joined = ok; });
  r.kernel.run_until(r.kernel.now() + 5000);
  ASSERT_TRUE(joined);
  EXPECT_EQ(r.overlay->node(2).peers.successor, std::optional<NodeIndex>(1));
  r.maintain(2, MaintenanceOp::stabilize);  // notifies 6
  EXPECT_EQ(r.overlay->node(1).peers.predecessor, std::optional<NodeIndex>(2));
  EXPECT_EQ(r.maintain(0, MaintenanceOp::stabilize), Outcome::effective);
  EXPECT_EQ(r.overlay->node(0).peers.successor, std::optional<NodeIndex>(2));
}

TEST(Overlay, DeadSuccessorFallsBackToSuccessorList) {
  Ring r({1, 3, 6}, 3);
  r.converge();
  r.overlay->kill(1);
  EXPECT_EQ(r.maintain(0, MaintenanceOp::stabilize), Outcome::access_failed);
  EXPECT_EQ(r.overlay->node(0).peers.successor, std::optional<NodeIndex>(2));
}

TEST(Overlay, FixFingerOnConvergedRingChangesNothing) {
  Ring r({10, 80, 150, 220}, 8);
  r.converge();
  for (unsigned i = 0; i < 8; ++i) EXPECT_EQ(r.maintain(0, MaintenanceOp::fix_next_finger), Outcome::non_effective);
}

TEST(Overlay, FixFingerNoticesANewOwner) {
  Ring r({10, 80, 150, 220, 30}, 8);
  r.converge();
  auto& n0 = r.overlay->mutable_node(0);
  n0.peers.fingers[4] = 1;  // target 26 really belongs to 30
  n0.peers.next_finger = 4;
  EXPECT_EQ(r.maintain(0, MaintenanceOp::fix_next_finger), Outcome::effective);
  EXPECT_EQ(r.overlay->node(0).peers.fingers[4], std::optional<NodeIndex>(4));
}

TEST(Overlay, FixFingerLookupFailureLeavesEntry) {
  Ring r({10, 80, 150, 220}, 8);
  r.converge();
  r.overlay->kill(2);
  auto& n0 = r.overlay->mutable_node(0);
  n0.peers.next_finger = 7;  // target 138 -> 150, which is dead
  const auto before = n0.peers.fingers[7];
  EXPECT_EQ(r.maintain(0, MaintenanceOp::fix_next_finger), Outcome::access_failed);
  EXPECT_EQ(r.overlay->node(0).peers.fingers[7], before);
}

TEST(Overlay, CheckPredecessor) {
  Ring r({1, 3, 6}, 3);
  r.converge();
  EXPECT_EQ(r.maintain(1, MaintenanceOp::check_predecessor), Outcome::non_effective);
  r.overlay->kill(0);
  EXPECT_EQ(r.maintain(1, MaintenanceOp::check_predecessor), Outcome::effective);
  EXPECT_FALSE(r.overlay->node(1).peers.predecessor.has_value());
  const auto bytes = r.overlay->total_bytes();
  EXPECT_EQ(r.maintain(1, MaintenanceOp::check_predecessor), Outcome::non_effective);
  EXPECT_EQ(r.overlay->total_bytes(), bytes);
}

TEST(Overlay, JoinIntoSingleNodeRing) {
  Ring r({100, 200}, 8);
  r.overlay->create_ring(0);
  r.overlay->bring_up(1);
  r.overlay->join(1, 0);
  r.kernel.run_until(r.kernel.now() + 5000);
  r.maintain(1, MaintenanceOp::stabilize);
  r.maintain(0, MaintenanceOp::stabilize);
  EXPECT_EQ(r.overlay->node(0).peers.successor, std::optional<NodeIndex>(1));
  EXPECT_EQ(r.overlay->node(1).peers.successor, std::optional<NodeIndex>(0));
  EXPECT_EQ(r.overlay->node(0).peers.predecessor, std::optional<NodeIndex>(1));
  EXPECT_EQ(r.overlay->node(1).peers.predecessor, std::optional<NodeIndex>(0));
  EXPECT_EQ(r.overlay->ring_walk(0), 2u);
}

TEST(Overlay, JoinThroughStaleFingerFails) {
  Ring r({10, 80, 150, 220, 190}, 8);
  r.converge();
  r.overlay->kill(4);
  r.overlay->kill(2);  // 10 still routes towards 191 through 150
  r.overlay->bring_up(4);
  std::optional<bool> ok;
  r.overlay->join(4, 0, [&](bool b) { ok = b; });
  r.kernel.run_until(r.kernel.now() + 1000);
  ASSERT_TRUE(ok.has_value());
  EXPECT_FALSE(*ok);
  EXPECT_FALSE(r.overlay->node(4).joined);
  EXPECT_LT(r.overlay->ring_walk(0), 5u);
}

TEST(Overlay, RejoinResetsIntervals) {
  OverlayConfig cfg;
  Ring r({10, 80}, 8, cfg);
  r.overlay->create_ring(0);
  r.overlay->set_interval(0, MaintenanceOp::stabilize, 7000);
  EXPECT_EQ(r.overlay->node(0).interval(MaintenanceOp::stabilize), 7000);
  r.overlay->kill(0);
  r.overlay->bring_up(0);
  for (auto op : kMaintenanceOps) EXPECT_EQ(r.overlay->node(0).interval(op), cfg.initial_interval_ms);
}

TEST(Overlay, RingWalk) {
  Ring r({10, 80, 150, 220}, 8);
  r.converge();
  EXPECT_EQ(r.overlay->ring_walk(0), 4u);
  r.overlay->mutable_node(1).peers.successor = 1;
  EXPECT_LT(r.overlay->ring_walk(0), 4u);
  Ring single({5}, 8);
  single.overlay->create_ring(0);
  EXPECT_EQ(single.overlay->ring_walk(0), 1u);
}

TEST(Overlay, MessageSizesFollowHeaderPlusDescriptors) {
  Ring r({1, 3, 6}, 3);
  r.converge();
  const auto before = r.overlay->node(1).bytes_sent;
  r.maintain(1, MaintenanceOp::check_predecessor);  // one ping, one reply
  const auto& cfg = r.overlay->config();
  EXPECT_EQ(r.overlay->node(1).bytes_sent - before, cfg.header_bytes);
  EXPECT_EQ(r.overlay->node(0).bytes_sent, cfg.header_bytes);
}

TEST(Overlay, SameSeedSameRun) {
  amsim::experiment::OverlayExperimentConfig cfg;
  cfg.churn.kind = amsim::scenario::ChurnKind::high;
  cfg.workload.kind = amsim::scenario::WorkloadKind::heavy;
  cfg.workload.heavy_count = 300;
  cfg.policies = amsim::manager::make_policy_set(amsim::manager::PolicySetId::policy1);
  const auto a = amsim::experiment::run_overlay_experiment(cfg);
  const auto b = amsim::experiment::run_overlay_experiment(cfg);
  EXPECT_EQ(a.events, b.events);
  EXPECT_EQ(a.topology_csv, b.topology_csv);
  EXPECT_EQ(amsim::experiment::intervals_csv(a.intervals), amsim::experiment::intervals_csv(b.intervals));
  EXPECT_EQ(amsim::experiment::ulm_csv(a.windows), amsim::experiment::ulm_csv(b.windows));
}

TEST(Overlay, TopologySnapshotListsEveryNode) {
  Ring r({10, 80, 150}, 8);
  r.converge();
  const std::string csv = topology_csv(*r.overlay);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_EQ(csv.rfind("id,alive,successor,predecessor", 0), 0u);
}
