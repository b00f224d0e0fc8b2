#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "amsim/analytics/ulm.hpp"
#include "amsim/manager/policy.hpp"
#include "amsim/overlay/overlay.hpp"
#include "amsim/scenario/churn.hpp"
#include "amsim/scenario/workload.hpp"

namespace amsim::experiment {

using sim::TimeMs;

struct OverlayExperimentConfig {
  std::size_t nodes = 16;
  overlay::OverlayConfig overlay;
  scenario::ChurnPattern churn;
  scenario::Workload workload;
  manager::PolicySet policies = manager::make_policy_set(manager::PolicySetId::policy0);
  /// Without a manager the intervals simply stay at their initial value.
  bool managed = true;
  /// Nodes join during the warm-up; churn and workload start when it ends.
  TimeMs warmup_ms = 60'000;
  TimeMs join_spacing_ms = 500;
  /// Simulated time allowed after the warm-up; the run also ends when the workload completes.
  TimeMs horizon_ms = 40 * 60 * 1000;
  TimeMs trace_period_ms = 2000;
  TimeMs window_ms = analytics::kDefaultWindowMs;
  unsigned retry_cap = analytics::kDefaultRetryCap;
  /// Node ids and churn derive from the base seed only, so repetitions share them.
  std::uint64_t base_seed = 1;
  /// Workload keys and maintenance phases derive from (base seed, repetition).
  std::uint64_t repetition = 0;
  bool dump_knowledge = false;
};

struct IntervalSample {
  TimeMs t = 0;
  overlay::NodeIndex node = 0;
  overlay::MaintenanceOp op = overlay::MaintenanceOp::stabilize;
  TimeMs interval = 0;
};

struct OverlayRunResult {
  TimeMs workload_start = 0;
  TimeMs end_time = 0;
  bool workload_complete = false;
  std::size_t lookups_planned = 0;
  std::vector<analytics::LookupRecord> lookups;
  std::vector<analytics::ByteSample> bytes;  // merged per millisecond
  std::vector<analytics::UlmWindow> windows;
  std::optional<double> holistic_elt;
  std::vector<IntervalSample> intervals;
  std::uint64_t join_failures = 0;
  std::uint64_t evaluations = 0;
  std::uint64_t immediate_runs = 0;
  std::uint64_t events = 0;
  std::size_t final_ring_size = 0;
  std::string topology_csv;
  std::string knowledge_dump;  // the gateway's knowledge, when requested
};

OverlayRunResult run_overlay_experiment(const OverlayExperimentConfig& config);

/// Per-node ids drawn from the base seed, distinct.
std::vector<overlay::RingKey> node_ids(std::size_t nodes, unsigned bits, std::uint64_t base_seed);

std::string ulm_csv(const std::vector<analytics::UlmWindow>& windows);
std::string intervals_csv(const std::vector<IntervalSample>& samples);

}  // namespace amsim::experiment
