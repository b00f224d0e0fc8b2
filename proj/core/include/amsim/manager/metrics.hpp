#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "amsim/gamf/knowledge.hpp"
#include "amsim/manager/policy.hpp"

namespace amsim::manager {

/// Event types the overlay generator records into a node's knowledge.
namespace events {
inline constexpr std::string_view kLookupCompleted = "lookup_completed";  // payload: elapsed_ms, purpose
inline constexpr std::string_view kLookupFailed = "lookup_failed";        // payload: elapsed_ms, purpose
inline constexpr std::string_view kFingerAccessFailed = "finger_access_failed";
inline constexpr std::string_view kSuccessorAccessFailed = "successor_access_failed";
inline constexpr std::string_view kFindWorkingSuccessor = "find_working_successor";
inline constexpr std::string_view kPredecessorAccessFailed = "predecessor_access_failed";

/// `<op>.outcome`, payload: outcome.
std::string outcome_type(MaintenanceOp op);
/// The failure event counted by the ER metric of `op`.
std::string_view error_type(MaintenanceOp op);
/// Every type the overlay generator claims.
std::vector<std::string> all_types();
}  // namespace events

/// `<metric>.<op>`, e.g. `nemo.stabilize`.
std::string metric_type(MetricKind kind, MaintenanceOp op);

/// Count of outcome events whose payload says non_effective.
double count_non_effective(const std::vector<gamf::Record>& outcomes);
/// Mean `elapsed_ms` over lookup_completed events; 0 when there are none.
double mean_lookup_time(const std::vector<gamf::Record>& completed);

// The extractors consume the caller's cursor, so each call sees only the
// records stored since the caller's previous call.
gamf::MetricValue extract_nemo(gamf::Knowledge& knowledge, std::string_view caller, MaintenanceOp op, TimeMs now);
gamf::MetricValue extract_er(gamf::Knowledge& knowledge, std::string_view caller, MaintenanceOp op, TimeMs now);
gamf::MetricValue extract_lilt(gamf::Knowledge& knowledge, std::string_view caller, MaintenanceOp op, TimeMs now);
gamf::MetricValue extract(MetricKind kind, gamf::Knowledge& knowledge, std::string_view caller, MaintenanceOp op,
                          TimeMs now);

}  // namespace amsim::manager
