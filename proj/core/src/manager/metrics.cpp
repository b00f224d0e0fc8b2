#include "amsim/manager/metrics.hpp"

#include <cstdlib>

namespace amsim::manager {

namespace events {

std::string outcome_type(MaintenanceOp op) { return std::string(overlay::to_string(op)) + ".outcome"; }

std::string_view error_type(MaintenanceOp op) {
  switch (op) {
    case MaintenanceOp::stabilize: return kFindWorkingSuccessor;
    case MaintenanceOp::fix_next_finger: return kFingerAccessFailed;
    case MaintenanceOp::check_predecessor: return kPredecessorAccessFailed;
  }
  return {};
}

std::vector<std::string> all_types() {
  std::vector<std::string> out{std::string(kLookupCompleted),       std::string(kLookupFailed),
                               std::string(kFingerAccessFailed),    std::string(kSuccessorAccessFailed),
                               std::string(kFindWorkingSuccessor), std::string(kPredecessorAccessFailed)};
  for (auto op : overlay::kMaintenanceOps) out.push_back(outcome_type(op));
  return out;
}

}  // namespace events

std::string metric_type(MetricKind kind, MaintenanceOp op) {
  return std::string(to_string(kind)) + "." + overlay::to_string(op);
}

double count_non_effective(const std::vector<gamf::Record>& outcomes) {
  double n = 0;
  for (const auto& r : outcomes) {
    auto it = r.info.find("outcome");
    if (it != r.info.end() && it->second == "non_effective") n += 1;
  }
  return n;
}

double mean_lookup_time(const std::vector<gamf::Record>& completed) {
  double sum = 0;
  std::size_t n = 0;
  for (const auto& r : completed) {
    auto it = r.info.find("elapsed_ms");
    if (it == r.info.end()) continue;
    sum += std::strtod(it->second.c_str(), nullptr);
    ++n;
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

namespace {

std::vector<gamf::Record> consume(gamf::Knowledge& knowledge, std::string_view caller, std::string_view type) {
  auto filter = gamf::KnowledgeFilter::of_type(std::string(type));
  filter.consume_since_last = true;
  return knowledge.query(filter, caller);
}

gamf::MetricValue metric(MetricKind kind, MaintenanceOp op, TimeMs now, double value) {
  return gamf::MetricValue{metric_type(kind, op), now, value, {}};
}

}  // namespace

gamf::MetricValue extract_nemo(gamf::Knowledge& knowledge, std::string_view caller, MaintenanceOp op, TimeMs now) {
  return metric(MetricKind::nemo, op, now, count_non_effective(consume(knowledge, caller, events::outcome_type(op))));
}

gamf::MetricValue extract_er(gamf::Knowledge& knowledge, std::string_view caller, MaintenanceOp op, TimeMs now) {
  const auto records = consume(knowledge, caller, events::error_type(op));
  return metric(MetricKind::er, op, now, static_cast<double>(records.size()));
}

gamf::MetricValue extract_lilt(gamf::Knowledge& knowledge, std::string_view caller, MaintenanceOp op, TimeMs now) {
  return metric(MetricKind::lilt, op, now, mean_lookup_time(consume(knowledge, caller, events::kLookupCompleted)));
}

gamf::MetricValue extract(MetricKind kind, gamf::Knowledge& knowledge, std::string_view caller, MaintenanceOp op,
                          TimeMs now) {
  switch (kind) {
    case MetricKind::nemo: return extract_nemo(knowledge, caller, op, now);
    case MetricKind::er: return extract_er(knowledge, caller, op, now);
    case MetricKind::lilt: return extract_lilt(knowledge, caller, op, now);
  }
  return {};
}

}  // namespace amsim::manager
