#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amsim/analytics/ulm.hpp"
#include "amsim/doc/model.hpp"
#include "amsim/doc/policy.hpp"
#include "amsim/scenario/churn.hpp"
#include "amsim/scenario/link_speed.hpp"

namespace amsim::experiment {

enum class DocWorkloadKind { heavy, light, variable };
const char* to_string(DocWorkloadKind kind);
std::optional<DocWorkloadKind> parse_doc_workload(std::string_view s);

enum class DocChurnKind { none, high, temporally_varying };
const char* to_string(DocChurnKind kind);
std::optional<DocChurnKind> parse_doc_churn(std::string_view s);

struct DocExperimentConfig {
  scenario::NetworkKind network = scenario::NetworkKind::server_bottleneck;
  std::size_t servers = 4;
  double size_bits = 1024 * doc::kKByteBits;
  DocWorkloadKind workload = DocWorkloadKind::heavy;
  std::size_t heavy_gets = 300;
  std::size_t light_gets = 10;
  double light_gap_s = 120;
  std::size_t variable_gets = 30;
  std::size_t variable_group = 3;
  double variable_gap_s = 120;
  DocChurnKind churn = DocChurnKind::none;
  /// temporally varying churn alternates churn-free and churn phases of this length
  double churn_phase_s = 300;
  doc::DocPolicyConfig policy = doc::doc_policy(0);
  double monitor_period_s = 15;
  /// Multiplicative monitoring noise: each sample is scaled by 1 + noise * u, u uniform on [-1, 1].
  double noise = 0.05;
  double horizon_s = 4 * 3600;
  sim::TimeMs window_ms = analytics::kDefaultWindowMs;
  unsigned retry_cap = analytics::kDefaultRetryCap;
  /// Churn and link schedules derive from the base seed; noise from (base seed, repetition).
  std::uint64_t base_seed = 1;
  std::uint64_t repetition = 0;
};

struct GetSample {
  double issued = 0;
  unsigned doc = 1;
  double get_time = 0;
  bool failed = false;
};

struct DocRunResult {
  std::vector<GetSample> gets;
  std::vector<std::pair<double, unsigned>> doc_trace;  // (time s, doc), initial value first
  std::vector<analytics::UlmWindow> windows;           // expected get time per window
  std::optional<double> holistic_egt_ms;
  bool workload_complete = false;
  double end_time = 0;
  std::uint64_t evaluations = 0;
  std::size_t fetches = 0;
  std::size_t failed_fetches = 0;
};

DocRunResult run_doc_experiment(const DocExperimentConfig& config);

std::string gets_csv(const std::vector<GetSample>& gets);
std::string doc_trace_csv(const std::vector<std::pair<double, unsigned>>& trace);

}  // namespace amsim::experiment
