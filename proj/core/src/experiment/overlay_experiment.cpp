#include "amsim/experiment/overlay_experiment.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <sstream>

#include "amsim/experiment/csv.hpp"
#include "amsim/manager/maintenance_manager.hpp"
#include "amsim/overlay/snapshot.hpp"

namespace amsim::experiment {

using overlay::NodeIndex;

std::vector<overlay::RingKey> node_ids(std::size_t nodes, unsigned bits, std::uint64_t base_seed) {
  if (bits < 63 && nodes > (std::uint64_t{1} << bits)) throw std::invalid_argument("ring too small for the node count");
  sim::Rng rng(sim::derive_seed(base_seed, {sim::hash_tag("ids")}));
  std::vector<overlay::RingKey> ids;
  std::set<overlay::RingKey> seen;
  while (ids.size() < nodes) {
    auto k = overlay::RingKey::random(rng, bits);
    if (seen.insert(k).second) ids.push_back(k);
  }
  return ids;
}

namespace {

constexpr NodeIndex kGateway = 0;

class Recorder : public overlay::OverlayObserver {
 public:
  explicit Recorder(manager::MaintenanceManager* manager) : manager_(manager) {}

  void on_maintenance(NodeIndex n, overlay::MaintenanceOp op, overlay::Outcome o, TimeMs t) override {
    if (manager_) manager_->on_maintenance(n, op, o, t);
  }
  void on_peer_failure(NodeIndex n, overlay::PeerFailure k, NodeIndex peer, TimeMs t) override {
    if (manager_) manager_->on_peer_failure(n, k, peer, t);
  }
  void on_lookup(NodeIndex n, overlay::LookupPurpose p, const overlay::LookupResult& r, TimeMs t) override {
    if (manager_) manager_->on_lookup(n, p, r, t);
  }
  void on_message(NodeIndex, std::size_t bytes, TimeMs t) override {
    if (!bytes_.empty() && bytes_.back().t == t) {
      bytes_.back().bytes += bytes;
    } else {
      bytes_.push_back({t, bytes});
    }
  }
  void on_joined(NodeIndex n, TimeMs t) override {
    if (manager_) manager_->on_joined(n, t);
  }
  void on_join_failed(NodeIndex, TimeMs) override { ++join_failures_; }
  void on_down(NodeIndex n, TimeMs t) override {
    if (manager_) manager_->on_down(n, t);
  }

  std::vector<analytics::ByteSample> bytes_;
  std::uint64_t join_failures_ = 0;

 private:
  manager::MaintenanceManager* manager_;
};

/// Issues the workload batches through the gateway.
class WorkloadRunner {
 public:
  WorkloadRunner(sim::EventKernel<TimeMs>& kernel, overlay::Overlay& overlay,
                 std::vector<scenario::LookupBatch> batches, std::function<void()> on_complete)
      : kernel_(kernel), overlay_(overlay), batches_(std::move(batches)), on_complete_(std::move(on_complete)) {}

  void start() {
    start_ = kernel_.now();
    if (batches_.empty()) {
      on_complete_();
      return;
    }
    for (std::size_t i = 0; i < batches_.size(); ++i) {
      if (i == 0 || batches_[i].anchor == scenario::Anchor::absolute) {
        const TimeMs at = start_ + (batches_[i].anchor == scenario::Anchor::absolute ? batches_[i].delay : 0);
        kernel_.schedule_at(std::max(at, kernel_.now()), [this, i] { run_batch(i); });
      }
    }
  }

  std::vector<analytics::LookupRecord> records;

 private:
  void run_batch(std::size_t i) {
    const auto& b = batches_[i];
    if (b.keys.empty()) {
      batch_done(i);
      return;
    }
    if (b.mode == scenario::BatchMode::parallel) {
      auto remaining = std::make_shared<std::size_t>(b.keys.size());
      for (const auto& key : b.keys) {
        issue(key, [this, i, remaining] {
          if (--*remaining == 0) batch_done(i);
        });
      }
    } else {
      run_sequential(i, 0);
    }
  }

  void run_sequential(std::size_t i, std::size_t j) {
    if (j == batches_[i].keys.size()) {
      batch_done(i);
      return;
    }
    issue(batches_[i].keys[j], [this, i, j] { run_sequential(i, j + 1); });
  }

  void issue(const overlay::RingKey& key, std::function<void()> next) {
    const TimeMs issued = kernel_.now();
    overlay_.lookup(kGateway, key, [this, issued, next = std::move(next)](const overlay::LookupResult& r) {
      records.push_back({issued, r.failed, r.elapsed});
      next();
    });
  }

  void batch_done(std::size_t i) {
    ++completed_;
    if (i + 1 < batches_.size() && batches_[i + 1].anchor == scenario::Anchor::after_previous) {
      kernel_.schedule_after(batches_[i + 1].delay, [this, i] { run_batch(i + 1); });
    }
    if (completed_ == batches_.size()) on_complete_();
  }

  sim::EventKernel<TimeMs>& kernel_;
  overlay::Overlay& overlay_;
  std::vector<scenario::LookupBatch> batches_;
  std::function<void()> on_complete_;
  TimeMs start_ = 0;
  std::size_t completed_ = 0;
};

}  // namespace

OverlayRunResult run_overlay_experiment(const OverlayExperimentConfig& config) {
  if (config.nodes == 0) throw std::invalid_argument("need at least one node");
  OverlayRunResult result;
  sim::EventKernel<TimeMs> kernel;

  auto ocfg = config.overlay;
  ocfg.bootstrap = kGateway;
  ocfg.seed = sim::derive_seed(config.base_seed, {sim::hash_tag("phase"), config.repetition});
  overlay::Overlay ov(kernel, ocfg, node_ids(config.nodes, ocfg.bits, config.base_seed));

  std::unique_ptr<manager::MaintenanceManager> mgr;
  if (config.managed) mgr = std::make_unique<manager::MaintenanceManager>(kernel, ov, config.policies);
  Recorder recorder(mgr.get());
  ov.set_observer(&recorder);

  // membership: the gateway founds the ring, everyone else joins through it
  ov.create_ring(kGateway);
  for (NodeIndex n = 1; n < config.nodes; ++n) {
    kernel.schedule_at(static_cast<TimeMs>(n) * config.join_spacing_ms, [&ov, n] {
      ov.bring_up(n);
      ov.join(n, kGateway);
    });
  }

  const TimeMs start = config.warmup_ms;
  const TimeMs end = start + config.horizon_ms;
  result.workload_start = start;

  auto pattern = config.churn;
  pattern.seed = sim::derive_seed(config.base_seed, {sim::hash_tag("churn")});
  std::vector<bool> exempt(config.nodes, false);
  exempt[kGateway] = true;
  const auto schedule = scenario::build_churn_schedule(pattern, config.nodes, config.horizon_ms, exempt);
  for (NodeIndex n = 0; n < config.nodes; ++n) {
    for (const auto& d : schedule[n]) {
      kernel.schedule_at(start + d.down_at, [&ov, n] { ov.kill(n); });
      kernel.schedule_at(start + d.up_at, [&ov, n] {
        if (ov.node(n).alive) return;
        ov.bring_up(n);
        ov.join(n, kGateway);
      });
    }
  }

  auto workload = config.workload;
  workload.seed = sim::derive_seed(config.base_seed, {sim::hash_tag("workload"), config.repetition});
  auto batches = scenario::build_workload(workload, ocfg.bits);
  result.lookups_planned = scenario::lookup_count(batches);
  WorkloadRunner runner(kernel, ov, std::move(batches), [&] {
    result.workload_complete = true;
    kernel.stop();
  });
  kernel.schedule_at(start, [&runner] { runner.start(); });

  // interval trace, sampled for every live member
  std::function<void()> sample = [&] {
    for (NodeIndex n = 0; n < config.nodes; ++n) {
      const auto& st = ov.node(n);
      if (!st.alive || !st.joined) continue;
      for (auto op : overlay::kMaintenanceOps) result.intervals.push_back({kernel.now(), n, op, st.interval(op)});
    }
    kernel.schedule_after(config.trace_period_ms, sample);
  };
  kernel.schedule_at(start, sample);

  kernel.run_until(end);
  result.end_time = kernel.now();
  result.events = kernel.executed();

  result.lookups = std::move(runner.records);
  std::stable_sort(result.lookups.begin(), result.lookups.end(),
                   [](const auto& a, const auto& b) { return a.issued_at < b.issued_at; });
  result.bytes = std::move(recorder.bytes_);
  // only traffic up to the last measured instant counts
  std::erase_if(result.bytes, [&](const analytics::ByteSample& b) { return b.t > result.end_time; });
  result.windows = analytics::window_aggregate(result.lookups, result.bytes, config.window_ms, config.retry_cap);
  if (std::any_of(result.lookups.begin(), result.lookups.end(), [](const auto& r) { return !r.failed; })) {
    result.holistic_elt = analytics::holistic_elt(result.lookups, config.retry_cap);
  }
  result.join_failures = recorder.join_failures_;
  if (mgr) {
    result.evaluations = mgr->evaluations();
    result.immediate_runs = mgr->immediate_runs();
    if (config.dump_knowledge) {
      if (auto* g = mgr->manager_of(kGateway)) {
        std::ostringstream out;
        g->framework().knowledge().dump(out);
        result.knowledge_dump = out.str();
      }
    }
  }
  result.final_ring_size = ov.ring_walk(kGateway);
  result.topology_csv = overlay::topology_csv(ov);
  ov.set_observer(nullptr);
  return result;
}

std::string ulm_csv(const std::vector<analytics::UlmWindow>& windows) {
  std::string out = "window_start_ms,elt_ms,nu_bytes,ler\n";
  for (const auto& w : windows) {
    out += std::to_string(w.from) + ',' + (w.elt ? format_double(*w.elt) : std::string()) + ',' +
           std::to_string(w.nu) + ',' + format_double(w.ler) + '\n';
  }
  return out;
}

std::string intervals_csv(const std::vector<IntervalSample>& samples) {
  std::string out = "time_ms,node_id,op,interval_ms\n";
  for (const auto& s : samples) {
    out += std::to_string(s.t) + ',' + std::to_string(s.node) + ',' + overlay::to_string(s.op) + ',' +
           std::to_string(s.interval) + '\n';
  }
  return out;
}

}  // namespace amsim::experiment
