#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "amsim/overlay/overlay.hpp"

namespace amsim::manager {

using overlay::MaintenanceOp;
using sim::TimeMs;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class MetricKind { nemo, er, lilt };
const char* to_string(MetricKind kind);

enum class Direction { increase, decrease };

struct SubPolicyParams {
  double t = 0.0;
  double k = kInfinity;  // infinity switches the sub-policy off (P = 0)
  Direction direction = Direction::increase;
};

struct SubPolicy {
  MetricKind metric = MetricKind::nemo;
  SubPolicyParams params;
};

struct OpPolicyConfig {
  MaintenanceOp op = MaintenanceOp::stabilize;
  std::vector<SubPolicy> sub_policies;
  TimeMs eval_interval = 2000;
  TimeMs initial_interval = 2000;
};

enum class PolicySetId { policy0, policy1, policy2, custom };
const char* to_string(PolicySetId id);
std::optional<PolicySetId> parse_policy_set_id(std::string_view s);

struct PolicySet {
  PolicySetId id = PolicySetId::custom;
  std::array<OpPolicyConfig, 3> ops;
  TimeMs min_interval = 100;
  /// Run the operation at once when its error metric is non-zero.
  bool immediate_on_error = true;

  const OpPolicyConfig& of(MaintenanceOp op) const { return ops[static_cast<std::size_t>(op)]; }
  OpPolicyConfig& of(MaintenanceOp op) { return ops[static_cast<std::size_t>(op)]; }
};

/// Builds one of the predefined sets. policy0 never changes an interval.
PolicySet make_policy_set(PolicySetId id);

/// Builds a set from per-metric parameters shared by all operations
/// (check_predecessor never gets a LILT sub-policy).
PolicySet make_policy_set(const SubPolicyParams& nemo, const SubPolicyParams& er, const SubPolicyParams& lilt);

/// P = 1 - 1 / ((value - t) / k + 1) above the threshold, 0 otherwise.
double compute_p(double value, const SubPolicyParams& params);

/// current * (1 +- P), clamped to at least `min_interval`.
double sub_policy_interval(double current, double value, const SubPolicyParams& params, double min_interval = 100.0);

/// Arithmetic mean of the sub-policy responses.
double aggregate(const std::vector<double>& responses);

}  // namespace amsim::manager
