#include "amsim/manager/maintenance_manager.hpp"

#include <cmath>
#include <string>

#include "amsim/manager/metrics.hpp"

namespace amsim::manager {

namespace {

constexpr const char* kGenerator = "overlay";

const char* to_string(overlay::LookupPurpose p) {
  switch (p) {
    case overlay::LookupPurpose::workload: return "workload";
    case overlay::LookupPurpose::maintenance: return "maintenance";
    case overlay::LookupPurpose::join: return "join";
  }
  return "unknown";
}

std::string extractor_id(MetricKind kind, MaintenanceOp op) {
  return std::string("extract.") + to_string(kind) + "." + overlay::to_string(op);
}

std::string evaluator_id(MaintenanceOp op) { return std::string("policy.") + overlay::to_string(op); }

std::string effector_id(MaintenanceOp op) { return std::string("effector.") + overlay::to_string(op); }

}  // namespace

NodeManager::NodeManager(NodeIndex node, const PolicySet& policies, overlay::Overlay& overlay, TimeMs now)
    : node_(node), policies_(policies), overlay_(overlay), framework_(now) {
  gamf::AdapterDescriptor generator{kGenerator, gamf::AdapterKind::event_generator, "overlay", {}, true};
  for (auto& t : events::all_types()) generator.claimed_event_types.insert(t);
  framework_.register_adapter(generator);

  for (auto op : overlay::kMaintenanceOps) {
    exact_[static_cast<std::size_t>(op)] = static_cast<double>(overlay_.node(node_).interval(op));
    const auto& cfg = policies_.of(op);
    std::vector<MetricKind> kinds{MetricKind::nemo, MetricKind::er};
    for (const auto& sp : cfg.sub_policies) {
      if (sp.metric == MetricKind::lilt) kinds.push_back(MetricKind::lilt);
    }
    for (auto kind : kinds) {
      const std::string id = extractor_id(kind, op);
      framework_.register_adapter({id, gamf::AdapterKind::metric_extractor, overlay::to_string(op), {}, false},
                                  [kind, op](gamf::FiringContext& ctx) {
                                    auto value = extract(kind, ctx.framework.knowledge(), ctx.adapter_id, op, ctx.now);
                                    ctx.framework.record_metric(ctx.adapter_id, std::move(value));
                                  });
      framework_.add_trigger(id, gamf::Periodic{cfg.eval_interval});
    }
    framework_.register_adapter({effector_id(op), gamf::AdapterKind::effector, overlay::to_string(op), {}, false});
    const std::string eval = evaluator_id(op);
    framework_.register_adapter({eval, gamf::AdapterKind::policy_evaluator, overlay::to_string(op), {}, false},
                                [this, op](gamf::FiringContext& ctx) { evaluate(op, ctx.now); });
    framework_.add_trigger(eval, gamf::Periodic{cfg.eval_interval});
  }
}

void NodeManager::record(std::string type, TimeMs t, gamf::Info payload) {
  framework_.record_event(kGenerator, gamf::Event{std::move(type), t, std::move(payload)});
}

void NodeManager::on_maintenance(MaintenanceOp op, overlay::Outcome outcome, TimeMs t) {
  record(events::outcome_type(op), t, {{"outcome", overlay::to_string(outcome)}});
}

void NodeManager::on_peer_failure(overlay::PeerFailure kind, NodeIndex peer, TimeMs t) {
  std::string_view type;
  switch (kind) {
    case overlay::PeerFailure::finger: type = events::kFingerAccessFailed; break;
    case overlay::PeerFailure::successor: type = events::kSuccessorAccessFailed; break;
    case overlay::PeerFailure::find_working_successor: type = events::kFindWorkingSuccessor; break;
    case overlay::PeerFailure::predecessor: type = events::kPredecessorAccessFailed; break;
  }
  record(std::string(type), t, {{"peer", std::to_string(peer)}});
}

void NodeManager::on_lookup(overlay::LookupPurpose purpose, const overlay::LookupResult& result, TimeMs t) {
  // join lookups are issued before the node is a member and are not local lookups
  if (purpose == overlay::LookupPurpose::join) return;
  record(std::string(result.failed ? events::kLookupFailed : events::kLookupCompleted), t,
         {{"elapsed_ms", std::to_string(result.elapsed)}, {"purpose", to_string(purpose)}});
}

void NodeManager::evaluate(MaintenanceOp op, TimeMs now) {
  ++evaluations_;
  const auto& cfg = policies_.of(op);
  double& exact = exact_[static_cast<std::size_t>(op)];
  const TimeMs applied = overlay_.node(node_).interval(op);
  if (std::llround(exact) != applied) exact = static_cast<double>(applied);
  const double current = exact;
  auto latest = [&](MetricKind kind) {
    auto filter = gamf::KnowledgeFilter::of_type(metric_type(kind, op));
    filter.consume_since_last = true;
    const auto records = framework_.query(filter, evaluator_id(op));
    return records.empty() ? 0.0 : records.back().value;
  };
  const double er = latest(MetricKind::er);
  const double nemo = latest(MetricKind::nemo);
  std::vector<double> responses;
  std::optional<double> lilt;
  for (const auto& sp : cfg.sub_policies) {
    double value = 0;
    switch (sp.metric) {
      case MetricKind::nemo: value = nemo; break;
      case MetricKind::er: value = er; break;
      case MetricKind::lilt:
        if (!lilt) lilt = latest(MetricKind::lilt);
        value = *lilt;
        break;
    }
    responses.push_back(sub_policy_interval(current, value, sp.params, static_cast<double>(policies_.min_interval)));
  }
  const double next = responses.empty() ? current : aggregate(responses);
  (void)now;
  apply(op, next, policies_.immediate_on_error && er > 0);
}

void NodeManager::apply(MaintenanceOp op, double interval, bool error_seen) {
  exact_[static_cast<std::size_t>(op)] = interval;
  const auto ms = static_cast<TimeMs>(std::llround(interval));
  if (ms != overlay_.node(node_).interval(op)) overlay_.set_interval(node_, op, ms);
  if (error_seen && overlay_.run_immediately(node_, op)) ++immediate_runs_;
}

MaintenanceManager::MaintenanceManager(sim::EventKernel<TimeMs>& kernel, overlay::Overlay& overlay,
                                       PolicySet policies)
    : kernel_(kernel), overlay_(overlay), policies_(std::move(policies)) {
  managers_.resize(overlay_.size());
  drive_.resize(overlay_.size());
}

MaintenanceManager::~MaintenanceManager() {
  for (auto& h : drive_) {
    if (h) kernel_.cancel(*h);
  }
}

NodeManager* MaintenanceManager::manager_of(NodeIndex n) { return managers_.at(n).get(); }

void MaintenanceManager::on_maintenance(NodeIndex n, MaintenanceOp op, overlay::Outcome outcome, TimeMs t) {
  if (auto* m = manager_of(n)) m->on_maintenance(op, outcome, t);
}

void MaintenanceManager::on_peer_failure(NodeIndex n, overlay::PeerFailure kind, NodeIndex peer, TimeMs t) {
  if (auto* m = manager_of(n)) m->on_peer_failure(kind, peer, t);
}

void MaintenanceManager::on_lookup(NodeIndex origin, overlay::LookupPurpose purpose,
                                   const overlay::LookupResult& result, TimeMs t) {
  if (auto* m = manager_of(origin)) m->on_lookup(purpose, result, t);
}

void MaintenanceManager::on_joined(NodeIndex n, TimeMs t) {
  on_down(n, t);
  managers_[n] = std::make_unique<NodeManager>(n, policies_, overlay_, t);
  schedule_drive(n);
}

void MaintenanceManager::on_down(NodeIndex n, TimeMs) {
  if (drive_[n]) {
    kernel_.cancel(*drive_[n]);
    drive_[n].reset();
  }
  if (managers_[n]) {
    retired_evaluations_ += managers_[n]->evaluations();
    retired_immediate_ += managers_[n]->immediate_runs();
    managers_[n].reset();
  }
}

void MaintenanceManager::schedule_drive(NodeIndex n) {
  auto due = managers_[n]->framework().next_due();
  if (!due) return;
  drive_[n] = kernel_.schedule_at(std::max(*due, kernel_.now()), [this, n] {
    drive_[n].reset();
    auto* m = manager_of(n);
    if (!m) return;
    m->framework().advance(kernel_.now());
    if (manager_of(n) == m) schedule_drive(n);
  });
}

std::uint64_t MaintenanceManager::evaluations() const {
  std::uint64_t total = retired_evaluations_;
  for (const auto& m : managers_) {
    if (m) total += m->evaluations();
  }
  return total;
}

std::uint64_t MaintenanceManager::immediate_runs() const {
  std::uint64_t total = retired_immediate_;
  for (const auto& m : managers_) {
    if (m) total += m->immediate_runs();
  }
  return total;
}

}  // namespace amsim::manager
