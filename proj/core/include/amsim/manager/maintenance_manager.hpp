#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "amsim/gamf/framework.hpp"
#include "amsim/manager/policy.hpp"
#include "amsim/overlay/overlay.hpp"

namespace amsim::manager {

using overlay::NodeIndex;

/// Autonomic manager of one overlay node, built on its own GAMF instance.
///
/// Adapters: the protected "overlay" event generator; one NEMO/ER/LILT metric
/// extractor per operation; one policy evaluator and one effector per
/// operation. Extractors and evaluators share the evaluation period, and the
/// extractors fire first (adapter ids sort "extract.*" < "policy.*").
class NodeManager {
 public:
  NodeManager(NodeIndex node, const PolicySet& policies, overlay::Overlay& overlay, TimeMs now);

  NodeIndex node() const { return node_; }
  gamf::Framework& framework() { return framework_; }
  const gamf::Framework& framework() const { return framework_; }

  // Event generator side, fed by the overlay.
  void on_maintenance(MaintenanceOp op, overlay::Outcome outcome, TimeMs t);
  void on_peer_failure(overlay::PeerFailure kind, NodeIndex peer, TimeMs t);
  void on_lookup(overlay::LookupPurpose purpose, const overlay::LookupResult& result, TimeMs t);

  std::uint64_t evaluations() const { return evaluations_; }
  std::uint64_t immediate_runs() const { return immediate_runs_; }

 private:
  void record(std::string type, TimeMs t, gamf::Info payload = {});
  void evaluate(MaintenanceOp op, TimeMs now);
  void apply(MaintenanceOp op, double interval, bool error_seen);

  NodeIndex node_;
  const PolicySet& policies_;
  overlay::Overlay& overlay_;
  gamf::Framework framework_;
  // unrounded intervals; the overlay only sees whole milliseconds
  std::array<double, 3> exact_{};
  std::uint64_t evaluations_ = 0;
  std::uint64_t immediate_runs_ = 0;
};

/// Keeps one NodeManager per joined node and drives their frameworks from the
/// simulation kernel. A node that goes down loses its manager; a rejoining node
/// starts with a fresh one (and the overlay resets its intervals).
class MaintenanceManager : public overlay::OverlayObserver {
 public:
  MaintenanceManager(sim::EventKernel<TimeMs>& kernel, overlay::Overlay& overlay, PolicySet policies);
  ~MaintenanceManager() override;

  const PolicySet& policies() const { return policies_; }
  NodeManager* manager_of(NodeIndex n);

  void on_maintenance(NodeIndex n, MaintenanceOp op, overlay::Outcome outcome, TimeMs t) override;
  void on_peer_failure(NodeIndex n, overlay::PeerFailure kind, NodeIndex peer, TimeMs t) override;
  void on_lookup(NodeIndex origin, overlay::LookupPurpose purpose, const overlay::LookupResult& result,
                 TimeMs t) override;
  void on_joined(NodeIndex n, TimeMs t) override;
  void on_down(NodeIndex n, TimeMs t) override;

  std::uint64_t evaluations() const;
  std::uint64_t immediate_runs() const;

 private:
  void schedule_drive(NodeIndex n);

  sim::EventKernel<TimeMs>& kernel_;
  overlay::Overlay& overlay_;
  PolicySet policies_;
  std::vector<std::unique_ptr<NodeManager>> managers_;
  std::vector<std::optional<sim::EventKernel<TimeMs>::Handle>> drive_;
  std::uint64_t retired_evaluations_ = 0;
  std::uint64_t retired_immediate_ = 0;
};

}  // namespace amsim::manager
