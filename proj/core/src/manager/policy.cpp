#include "amsim/manager/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace amsim::manager {

const char* to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::nemo: return "nemo";
    case MetricKind::er: return "er";
    case MetricKind::lilt: return "lilt";
  }
  return "unknown";
}

const char* to_string(PolicySetId id) {
  switch (id) {
    case PolicySetId::policy0: return "policy0";
    case PolicySetId::policy1: return "policy1";
    case PolicySetId::policy2: return "policy2";
    case PolicySetId::custom: return "custom";
  }
  return "unknown";
}

std::optional<PolicySetId> parse_policy_set_id(std::string_view s) {
  for (auto id : {PolicySetId::policy0, PolicySetId::policy1, PolicySetId::policy2, PolicySetId::custom}) {
    if (s == to_string(id)) return id;
  }
  return std::nullopt;
}

PolicySet make_policy_set(const SubPolicyParams& nemo, const SubPolicyParams& er, const SubPolicyParams& lilt) {
  PolicySet set;
  for (auto op : overlay::kMaintenanceOps) {
    auto& cfg = set.of(op);
    cfg.op = op;
    cfg.sub_policies = {{MetricKind::nemo, nemo}, {MetricKind::er, er}};
    if (op != MaintenanceOp::check_predecessor) cfg.sub_policies.push_back({MetricKind::lilt, lilt});
  }
  return set;
}

PolicySet make_policy_set(PolicySetId id) {
  PolicySet set;
  switch (id) {
    case PolicySetId::policy0:
    case PolicySetId::custom:
      set = make_policy_set({0, kInfinity, Direction::increase}, {0, kInfinity, Direction::decrease},
                            {0, kInfinity, Direction::decrease});
      set.immediate_on_error = false;
      break;
    case PolicySetId::policy1:
      set = make_policy_set({0, 8, Direction::increase}, {0, 32, Direction::decrease},
                            {1600, kInfinity, Direction::decrease});
      break;
    case PolicySetId::policy2:
      set = make_policy_set({0, 2, Direction::increase}, {0, 8, Direction::decrease},
                            {0, kInfinity, Direction::decrease});
      break;
  }
  set.id = id;
  return set;
}

double compute_p(double value, const SubPolicyParams& params) {
  if (std::isinf(params.k) || value <= params.t) return 0.0;
  if (!(params.k > 0)) throw std::invalid_argument("sub-policy k must be positive");
  return 1.0 - 1.0 / ((value - params.t) / params.k + 1.0);
}

double sub_policy_interval(double current, double value, const SubPolicyParams& params, double min_interval) {
  if (!(current > 0)) throw std::invalid_argument("current interval must be positive");
  const double p = compute_p(value, params);
  const double next = params.direction == Direction::increase ? current * (1.0 + p) : current * (1.0 - p);
  return std::max(next, min_interval);
}

double aggregate(const std::vector<double>& responses) {
  if (responses.empty()) throw std::invalid_argument("aggregate needs at least one response");
  return std::accumulate(responses.begin(), responses.end(), 0.0) / static_cast<double>(responses.size());
}

}  // namespace amsim::manager
