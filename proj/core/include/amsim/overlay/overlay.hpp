#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "amsim/overlay/ring_key.hpp"
#include "amsim/sim/event_kernel.hpp"
#include "amsim/sim/rng.hpp"

namespace amsim::overlay {

using sim::TimeMs;
using NodeIndex = std::uint32_t;

enum class MaintenanceOp { stabilize = 0, fix_next_finger = 1, check_predecessor = 2 };
inline constexpr std::array<MaintenanceOp, 3> kMaintenanceOps = {
    MaintenanceOp::stabilize, MaintenanceOp::fix_next_finger, MaintenanceOp::check_predecessor};

const char* to_string(MaintenanceOp op);
std::optional<MaintenanceOp> parse_maintenance_op(std::string_view s);

enum class Outcome { effective, non_effective, access_failed };
const char* to_string(Outcome outcome);

/// Which kind of peer an access failure concerned.
enum class PeerFailure {
  finger,                  // a routing hop or lookup result did not answer
  successor,               // stabilize could not reach the successor
  find_working_successor,  // one call of the successor-list fall-back
  predecessor,             // checkPredecessor ping failed
};
const char* to_string(PeerFailure failure);

enum class LookupPurpose { workload, maintenance, join };

struct PeerSet {
  std::optional<NodeIndex> successor;
  std::vector<NodeIndex> successor_list;
  std::optional<NodeIndex> predecessor;
  std::vector<std::optional<NodeIndex>> fingers;  // entry i targets id + 2^i
  unsigned next_finger = 0;
};

struct NodeState {
  RingKey id;
  bool alive = false;
  bool joined = false;
  std::uint64_t incarnation = 0;
  PeerSet peers;
  std::array<TimeMs, 3> intervals{};
  std::uint64_t bytes_sent = 0;

  TimeMs interval(MaintenanceOp op) const { return intervals[static_cast<std::size_t>(op)]; }
};

struct OverlayConfig {
  unsigned bits = 32;
  std::size_t successor_list_length = 4;
  TimeMs link_latency_ms = 10;
  TimeMs timeout_ms = 500;
  /// Time a node spends handling one request; requests queue FIFO per node.
  TimeMs service_ms = 80;
  TimeMs initial_interval_ms = 2000;
  /// Delay before a failed join is attempted again; 0 disables retries.
  TimeMs join_retry_ms = 5000;
  std::size_t header_bytes = 64;
  std::size_t descriptor_bytes = 16;
  /// Node used to bootstrap joins and to re-enter a ring after losing every successor.
  NodeIndex bootstrap = 0;
  std::uint64_t seed = 1;
};

struct LookupResult {
  bool failed = false;
  NodeIndex result = 0;
  int hops = 0;
  TimeMs elapsed = 0;
  std::optional<NodeIndex> dead_peer;
};

/// Receives everything the overlay reports. Default implementations ignore it.
class OverlayObserver {
 public:
  virtual ~OverlayObserver() = default;
  virtual void on_maintenance(NodeIndex, MaintenanceOp, Outcome, TimeMs) {}
  virtual void on_peer_failure(NodeIndex, PeerFailure, NodeIndex /*peer*/, TimeMs) {}
  virtual void on_lookup(NodeIndex /*origin*/, LookupPurpose, const LookupResult&, TimeMs /*completed*/) {}
  virtual void on_message(NodeIndex /*sender*/, std::size_t /*bytes*/, TimeMs) {}
  virtual void on_joined(NodeIndex, TimeMs) {}
  virtual void on_join_failed(NodeIndex, TimeMs) {}
  virtual void on_down(NodeIndex, TimeMs) {}
};

/// Chord-style key-based routing overlay on the discrete-event kernel.
///
/// Network model: every message takes `link_latency_ms`; each request is
/// handled after waiting for the receiver's FIFO service queue; contacting a
/// node that is down costs `timeout_ms` from the moment the request was sent.
/// Lookups are iterative and have no fall-back: one unreachable hop fails the
/// whole lookup.
class Overlay {
 public:
  using LookupCallback = std::function<void(const LookupResult&)>;
  using OutcomeCallback = std::function<void(Outcome)>;
  using JoinCallback = std::function<void(bool)>;

  Overlay(sim::EventKernel<TimeMs>& kernel, OverlayConfig config, std::vector<RingKey> ids);
  Overlay(const Overlay&) = delete;
  Overlay& operator=(const Overlay&) = delete;
  ~Overlay();

  void set_observer(OverlayObserver* observer) { observer_ = observer; }

  const OverlayConfig& config() const { return config_; }
  std::size_t size() const { return nodes_.size(); }
  const NodeState& node(NodeIndex n) const { return nodes_.at(n); }
  /// Direct state access for tests and fixtures.
  NodeState& mutable_node(NodeIndex n) { return nodes_.at(n); }
  std::optional<NodeIndex> find(const RingKey& id) const;
  TimeMs now() const { return kernel_.now(); }

  // --- membership -------------------------------------------------------
  /// Starts a new ring consisting of `n` alone.
  void create_ring(NodeIndex n);
  /// Marks `n` alive with a fresh, empty peer set and initial intervals.
  void bring_up(NodeIndex n);
  /// Looks up the successor of n via `known` and installs it.
  void join(NodeIndex n, NodeIndex known, JoinCallback done = {});
  /// Crash-stop: the node loses all state and in-flight work.
  void kill(NodeIndex n);

  // --- maintenance ------------------------------------------------------
  void stabilize(NodeIndex n, OutcomeCallback done = {});
  void fix_next_finger(NodeIndex n, OutcomeCallback done = {});
  void check_predecessor(NodeIndex n, OutcomeCallback done = {});
  void run_maintenance(NodeIndex n, MaintenanceOp op, OutcomeCallback done = {});

  /// Schedules the periodic maintenance operations of a joined node. The first
  /// execution of each operation happens at a seeded offset within one interval.
  void start_periodic_maintenance(NodeIndex n);
  /// Effector entry point: changes the interval and moves the pending execution.
  void set_interval(NodeIndex n, MaintenanceOp op, TimeMs interval);
  /// Runs `op` now unless an execution is already in progress. Does not
  /// change the periodic phase.
  bool run_immediately(NodeIndex n, MaintenanceOp op);
  bool is_running(NodeIndex n, MaintenanceOp op) const;

  // --- routing ----------------------------------------------------------
  void lookup(NodeIndex origin, const RingKey& key, LookupCallback done,
              LookupPurpose purpose = LookupPurpose::workload);
  /// Number of nodes reached by following successor pointers from `gateway`.
  std::size_t ring_walk(NodeIndex gateway) const;

  std::uint64_t total_bytes() const;

 private:
  struct Reply;
  struct LookupOp;
  struct Periodic;
  enum class Rpc { find_step, get_neighbours, ping };

  using ReplyCallback = std::function<void(std::optional<Reply>)>;

  void send_bytes(NodeIndex from, std::size_t bytes);
  void call(NodeIndex from, NodeIndex to, Rpc kind, const RingKey& key, ReplyCallback cont);
  void notify(NodeIndex from, NodeIndex to);
  std::optional<Reply> serve(NodeIndex at, Rpc kind, const RingKey& key) const;
  Reply route_step(NodeIndex at, const RingKey& key) const;
  NodeIndex closest_preceding(NodeIndex at, const RingKey& key) const;

  void lookup_impl(NodeIndex origin, const RingKey& key, std::optional<NodeIndex> first_hop,
                   LookupPurpose purpose, LookupCallback done);
  void lookup_advance(const std::shared_ptr<LookupOp>& op, const Reply& decision, NodeIndex decided_at);
  void lookup_finish(const std::shared_ptr<LookupOp>& op, bool failed, NodeIndex result,
                     std::optional<NodeIndex> dead);

  void find_working_successor(NodeIndex n, NodeIndex failed, OutcomeCallback done);
  void try_successor_candidates(NodeIndex n, std::vector<NodeIndex> candidates, std::size_t idx,
                                OutcomeCallback done);
  void set_successor_list(NodeIndex n, std::vector<NodeIndex> list);

  /// Wraps a continuation so it is dropped if `n` crashed in the meantime.
  template <typename F>
  auto guarded(NodeIndex n, F f);

  void schedule_periodic(NodeIndex n, MaintenanceOp op);
  void on_periodic_due(NodeIndex n, MaintenanceOp op);
  void execute(NodeIndex n, MaintenanceOp op, bool periodic);
  void reset_periodic(NodeIndex n);

  Periodic& periodic(NodeIndex n, MaintenanceOp op);
  const Periodic& periodic(NodeIndex n, MaintenanceOp op) const;

  sim::EventKernel<TimeMs>& kernel_;
  OverlayConfig config_;
  std::vector<NodeState> nodes_;
  std::vector<TimeMs> busy_until_;
  std::vector<std::array<std::unique_ptr<Periodic>, 3>> periodic_;
  OverlayObserver* observer_ = nullptr;
  sim::Rng phase_rng_;
  std::vector<RingKey> pow2_;
};

}  // namespace amsim::overlay
