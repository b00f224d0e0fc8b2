#include "amsim/overlay/overlay.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace amsim::overlay {

const char* to_string(MaintenanceOp op) {
  switch (op) {
    case MaintenanceOp::stabilize: return "stabilize";
    case MaintenanceOp::fix_next_finger: return "fix_next_finger";
    case MaintenanceOp::check_predecessor: return "check_predecessor";
  }
  return "unknown";
}

std::optional<MaintenanceOp> parse_maintenance_op(std::string_view s) {
  for (auto op : kMaintenanceOps) {
    if (s == to_string(op)) return op;
  }
  return std::nullopt;
}

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::effective: return "effective";
    case Outcome::non_effective: return "non_effective";
    case Outcome::access_failed: return "access_failed";
  }
  return "unknown";
}

const char* to_string(PeerFailure failure) {
  switch (failure) {
    case PeerFailure::finger: return "finger";
    case PeerFailure::successor: return "successor";
    case PeerFailure::find_working_successor: return "find_working_successor";
    case PeerFailure::predecessor: return "predecessor";
  }
  return "unknown";
}

struct Overlay::Reply {
  // find_step
  bool resolved = false;
  NodeIndex next = 0;
  // get_neighbours
  std::optional<NodeIndex> predecessor;
  std::vector<NodeIndex> successor_list;
  std::size_t descriptors = 0;
};

struct Overlay::LookupOp {
  NodeIndex origin = 0;
  RingKey key;
  LookupPurpose purpose = LookupPurpose::workload;
  TimeMs start = 0;
  int hops = 0;
  std::optional<NodeIndex> last_contacted;
  LookupCallback done;
};

struct Overlay::Periodic {
  TimeMs last_start = 0;
  std::optional<sim::EventKernel<TimeMs>::Handle> pending;
  bool running = false;
  bool active = false;
};

Overlay::Overlay(sim::EventKernel<TimeMs>& kernel, OverlayConfig config, std::vector<RingKey> ids)
    : kernel_(kernel), config_(config), phase_rng_(sim::derive_seed(config.seed, {sim::hash_tag("phase")})) {
  if (config_.successor_list_length == 0) throw std::invalid_argument("successor list length must be positive");
  if (config_.initial_interval_ms <= 0) throw std::invalid_argument("initial interval must be positive");
  if (ids.empty()) throw std::invalid_argument("overlay needs at least one node");
  if (config_.bootstrap >= ids.size()) throw std::invalid_argument("bootstrap node out of range");
  std::vector<RingKey> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("node ids must be distinct");
  }
  for (unsigned i = 0; i < config_.bits; ++i) pow2_.push_back(RingKey::pow2(i, config_.bits));
  nodes_.resize(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i].bits() != config_.bits) throw std::invalid_argument("node id has the wrong ring size");
    nodes_[i].id = ids[i];
    nodes_[i].intervals.fill(config_.initial_interval_ms);
  }
  busy_until_.assign(ids.size(), 0);
  periodic_.resize(ids.size());
  for (auto& per_node : periodic_) {
    for (auto& p : per_node) p = std::make_unique<Periodic>();
  }
}

Overlay::~Overlay() {
  for (NodeIndex n = 0; n < nodes_.size(); ++n) reset_periodic(n);
}

std::optional<NodeIndex> Overlay::find(const RingKey& id) const {
  for (NodeIndex i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].id == id) return i;
  }
  return std::nullopt;
}

template <typename F>
auto Overlay::guarded(NodeIndex n, F f) {
  const std::uint64_t incarnation = nodes_[n].incarnation;
  return [this, n, incarnation, f = std::move(f)](auto&&... args) mutable {
    const auto& st = nodes_[n];
    if (!st.alive || st.incarnation != incarnation) return;
    f(std::forward<decltype(args)>(args)...);
  };
}

// --- messaging --------------------------------------------------------------

void Overlay::send_bytes(NodeIndex from, std::size_t bytes) {
  nodes_[from].bytes_sent += bytes;
  if (observer_) observer_->on_message(from, bytes, kernel_.now());
}

void Overlay::call(NodeIndex from, NodeIndex to, Rpc kind, const RingKey& key, ReplyCallback cont) {
  const std::size_t request =
      config_.header_bytes + (kind == Rpc::find_step ? config_.descriptor_bytes : 0);
  send_bytes(from, request);
  const TimeMs sent = kernel_.now();
  auto deliver = guarded(from, std::move(cont));
  kernel_.schedule_after(config_.link_latency_ms, [this, from, to, kind, key, sent, deliver]() mutable {
    (void)from;
    if (!nodes_[to].alive) {
      kernel_.schedule_at(std::max(kernel_.now(), sent + config_.timeout_ms),
                          [deliver]() mutable { deliver(std::optional<Reply>{}); });
      return;
    }
    const TimeMs start = std::max(kernel_.now(), busy_until_[to]);
    const TimeMs end = start + config_.service_ms;
    busy_until_[to] = end;
    const std::uint64_t incarnation = nodes_[to].incarnation;
    kernel_.schedule_at(end, [this, to, kind, key, sent, incarnation, deliver]() mutable {
      if (!nodes_[to].alive || nodes_[to].incarnation != incarnation) {
        kernel_.schedule_at(std::max(kernel_.now(), sent + config_.timeout_ms),
                            [deliver]() mutable { deliver(std::optional<Reply>{}); });
        return;
      }
      std::optional<Reply> reply = serve(to, kind, key);
      const std::size_t descriptors = reply ? reply->descriptors : 0;
      send_bytes(to, config_.header_bytes + descriptors * config_.descriptor_bytes);
      kernel_.schedule_after(config_.link_latency_ms,
                             [deliver, reply = std::move(reply)]() mutable { deliver(std::move(reply)); });
    });
  });
}

void Overlay::notify(NodeIndex from, NodeIndex to) {
  if (from == to) return;
  send_bytes(from, config_.header_bytes + config_.descriptor_bytes);
  kernel_.schedule_after(config_.link_latency_ms, [this, from, to] {
    if (!nodes_[to].alive) return;
    const TimeMs start = std::max(kernel_.now(), busy_until_[to]);
    const TimeMs end = start + config_.service_ms;
    busy_until_[to] = end;
    const std::uint64_t incarnation = nodes_[to].incarnation;
    kernel_.schedule_at(end, [this, from, to, incarnation] {
      auto& st = nodes_[to];
      if (!st.alive || !st.joined || st.incarnation != incarnation) return;
      auto& pred = st.peers.predecessor;
      if (!pred || *pred == to || in_open(nodes_[from].id, nodes_[*pred].id, st.id)) pred = from;
    });
  });
}

std::optional<Overlay::Reply> Overlay::serve(NodeIndex at, Rpc kind, const RingKey& key) const {
  const auto& st = nodes_[at];
  if (!st.joined) return std::nullopt;
  switch (kind) {
    case Rpc::find_step: return route_step(at, key);
    case Rpc::get_neighbours: {
      Reply r;
      r.predecessor = st.peers.predecessor;
      r.successor_list = st.peers.successor_list;
      r.descriptors = 1 + r.successor_list.size();
      return r;
    }
    case Rpc::ping: return Reply{};
  }
  return std::nullopt;
}

NodeIndex Overlay::closest_preceding(NodeIndex at, const RingKey& key) const {
  const auto& st = nodes_[at];
  for (std::size_t i = st.peers.fingers.size(); i-- > 0;) {
    const auto& f = st.peers.fingers[i];
    if (f && in_open(nodes_[*f].id, st.id, key)) return *f;
  }
  if (st.peers.successor && in_open(nodes_[*st.peers.successor].id, st.id, key)) return *st.peers.successor;
  return at;
}

Overlay::Reply Overlay::route_step(NodeIndex at, const RingKey& key) const {
  const auto& st = nodes_[at];
  const NodeIndex succ = *st.peers.successor;
  Reply r;
  r.descriptors = 1;
  if (succ == at || in_half_open(key, st.id, nodes_[succ].id)) {
    r.resolved = true;
    r.next = succ;
    return r;
  }
  const NodeIndex hop = closest_preceding(at, key);
  r.resolved = hop == at;
  r.next = hop == at ? succ : hop;
  return r;
}

// --- lookup -----------------------------------------------------------------

void Overlay::lookup(NodeIndex origin, const RingKey& key, LookupCallback done, LookupPurpose purpose) {
  if (!nodes_.at(origin).alive) throw std::logic_error("lookup: origin node is down");
  if (!nodes_[origin].joined) throw std::logic_error("lookup: origin node has not joined");
  lookup_impl(origin, key, std::nullopt, purpose, std::move(done));
}

void Overlay::lookup_impl(NodeIndex origin, const RingKey& key, std::optional<NodeIndex> first_hop,
                          LookupPurpose purpose, LookupCallback done) {
  auto op = std::make_shared<LookupOp>();
  op->origin = origin;
  op->key = key;
  op->purpose = purpose;
  op->start = kernel_.now();
  op->done = std::move(done);
  if (first_hop && *first_hop != origin) {
    Reply via;
    via.next = *first_hop;
    lookup_advance(op, via, origin);
    return;
  }
  if (!nodes_[origin].joined) {
    lookup_finish(op, true, origin, std::nullopt);
    return;
  }
  // the origin's own routing step waits in its service queue like any request
  const TimeMs end = std::max(kernel_.now(), busy_until_[origin]) + config_.service_ms;
  busy_until_[origin] = end;
  kernel_.schedule_at(end, guarded(origin, [this, op] {
                        if (!nodes_[op->origin].joined) {
                          lookup_finish(op, true, op->origin, std::nullopt);
                          return;
                        }
                        lookup_advance(op, route_step(op->origin, op->key), op->origin);
                      }));
}

void Overlay::lookup_advance(const std::shared_ptr<LookupOp>& op, const Reply& decision, NodeIndex decided_at) {
  (void)decided_at;
  const NodeIndex origin = op->origin;
  if (!decision.resolved) {
    const NodeIndex hop = decision.next;
    // greedy routing strictly shrinks the distance to the key, so this only
    // trips on corrupted state
    if (op->hops > static_cast<int>(nodes_.size()) + 2) {
      lookup_finish(op, true, hop, std::nullopt);
      return;
    }
    ++op->hops;
    op->last_contacted = hop;
    call(origin, hop, Rpc::find_step, op->key, [this, op, hop](std::optional<Reply> reply) {
      if (!reply) {
        lookup_finish(op, true, hop, hop);
        return;
      }
      lookup_advance(op, *reply, hop);
    });
    return;
  }
  const NodeIndex result = decision.next;
  if (result == origin || (op->last_contacted && *op->last_contacted == result)) {
    lookup_finish(op, false, result, std::nullopt);
    return;
  }
  // the result is confirmed before the lookup completes
  ++op->hops;
  call(origin, result, Rpc::ping, op->key, [this, op, result](std::optional<Reply> reply) {
    if (!reply) {
      lookup_finish(op, true, result, result);
      return;
    }
    lookup_finish(op, false, result, std::nullopt);
  });
}

void Overlay::lookup_finish(const std::shared_ptr<LookupOp>& op, bool failed, NodeIndex result,
                            std::optional<NodeIndex> dead) {
  LookupResult r;
  r.failed = failed;
  r.result = result;
  r.hops = op->hops;
  r.elapsed = kernel_.now() - op->start;
  r.dead_peer = dead;
  const TimeMs now = kernel_.now();
  if (observer_) {
    if (dead) observer_->on_peer_failure(op->origin, PeerFailure::finger, *dead, now);
    observer_->on_lookup(op->origin, op->purpose, r, now);
  }
  if (op->done) op->done(r);
}

// --- membership -------------------------------------------------------------

void Overlay::bring_up(NodeIndex n) {
  auto& st = nodes_.at(n);
  if (st.alive) throw std::logic_error("bring_up: node is already up");
  st.alive = true;
  st.joined = false;
  st.peers = PeerSet{};
  st.peers.fingers.assign(config_.bits, std::nullopt);
  st.intervals.fill(config_.initial_interval_ms);
}

void Overlay::create_ring(NodeIndex n) {
  if (!nodes_.at(n).alive) bring_up(n);
  auto& st = nodes_[n];
  st.peers = PeerSet{};
  st.peers.fingers.assign(config_.bits, std::nullopt);
  st.peers.successor = n;
  st.joined = true;
  if (observer_) observer_->on_joined(n, kernel_.now());
  start_periodic_maintenance(n);
}

void Overlay::join(NodeIndex n, NodeIndex known, JoinCallback done) {
  if (!nodes_.at(n).alive) throw std::logic_error("join: node is down");
  if (!nodes_.at(known).alive) throw std::invalid_argument("join: known node is down");
  if (nodes_[n].joined) throw std::logic_error("join: node already joined");
  const RingKey key = nodes_[n].id.next();
  lookup_impl(n, key, known, LookupPurpose::join,
              guarded(n, [this, n, known, done = std::move(done)](const LookupResult& r) {
                auto& st = nodes_[n];
                if (st.joined) return;
                if (!r.failed && r.result != n) {
                  st.peers = PeerSet{};
                  st.peers.fingers.assign(config_.bits, std::nullopt);
                  st.peers.successor = r.result;
                  st.peers.successor_list = {r.result};
                  st.joined = true;
                  if (observer_) observer_->on_joined(n, kernel_.now());
                  start_periodic_maintenance(n);
                  if (done) done(true);
                  return;
                }
                if (observer_) observer_->on_join_failed(n, kernel_.now());
                if (config_.join_retry_ms > 0) {
                  kernel_.schedule_after(config_.join_retry_ms, guarded(n, [this, n, known] {
                                           if (nodes_[n].joined) return;
                                           const NodeIndex via = nodes_[known].alive ? known : config_.bootstrap;
                                           if (!nodes_[via].alive || via == n) return;
                                           join(n, via);
                                         }));
                }
                if (done) done(false);
              }));
}

void Overlay::kill(NodeIndex n) {
  auto& st = nodes_.at(n);
  if (!st.alive) return;
  reset_periodic(n);
  st.alive = false;
  st.joined = false;
  ++st.incarnation;
  st.peers = PeerSet{};
  if (observer_) observer_->on_down(n, kernel_.now());
}

// --- maintenance ------------------------------------------------------------

void Overlay::set_successor_list(NodeIndex n, std::vector<NodeIndex> list) {
  std::vector<NodeIndex> out;
  for (NodeIndex x : list) {
    if (x == n || std::find(out.begin(), out.end(), x) != out.end()) continue;
    out.push_back(x);
    if (out.size() == config_.successor_list_length) break;
  }
  nodes_[n].peers.successor_list = std::move(out);
}

void Overlay::run_maintenance(NodeIndex n, MaintenanceOp op, OutcomeCallback done) {
  switch (op) {
    case MaintenanceOp::stabilize: stabilize(n, std::move(done)); break;
    case MaintenanceOp::fix_next_finger: fix_next_finger(n, std::move(done)); break;
    case MaintenanceOp::check_predecessor: check_predecessor(n, std::move(done)); break;
  }
}

namespace {

Overlay::OutcomeCallback reporter(OverlayObserver* observer, sim::EventKernel<TimeMs>& kernel, NodeIndex n,
                                  MaintenanceOp op, Overlay::OutcomeCallback done) {
  return [observer, &kernel, n, op, done = std::move(done)](Outcome o) {
    if (observer) observer->on_maintenance(n, op, o, kernel.now());
    if (done) done(o);
  };
}

}  // namespace

void Overlay::stabilize(NodeIndex n, OutcomeCallback done) {
  auto& st = nodes_.at(n);
  if (!st.alive || !st.joined) throw std::logic_error("stabilize: node is not part of the ring");
  auto report = reporter(observer_, kernel_, n, MaintenanceOp::stabilize, std::move(done));
  const NodeIndex s = *st.peers.successor;
  if (s == n) {
    const auto p = st.peers.predecessor;
    if (p && *p != n) {
      st.peers.successor = *p;
      set_successor_list(n, {*p});
      notify(n, *p);
      report(Outcome::effective);
    } else {
      report(Outcome::non_effective);
    }
    return;
  }
  call(n, s, Rpc::get_neighbours, st.id, [this, n, s, report](std::optional<Reply> reply) mutable {
    auto& me = nodes_[n];
    if (!reply) {
      if (observer_) observer_->on_peer_failure(n, PeerFailure::successor, s, kernel_.now());
      find_working_successor(n, s, report);
      return;
    }
    if (me.peers.successor != s) {
      report(Outcome::non_effective);
      return;
    }
    NodeIndex next = s;
    if (reply->predecessor && *reply->predecessor != n &&
        in_open(nodes_[*reply->predecessor].id, me.id, nodes_[s].id)) {
      next = *reply->predecessor;
    }
    std::vector<NodeIndex> list;
    if (next != s) list.push_back(next);
    list.push_back(s);
    list.insert(list.end(), reply->successor_list.begin(), reply->successor_list.end());
    const auto old_list = me.peers.successor_list;
    me.peers.successor = next;
    set_successor_list(n, std::move(list));
    const bool effective = next != s || me.peers.successor_list != old_list;
    notify(n, next);
    report(effective ? Outcome::effective : Outcome::non_effective);
  });
}

void Overlay::find_working_successor(NodeIndex n, NodeIndex failed, OutcomeCallback done) {
  if (observer_) observer_->on_peer_failure(n, PeerFailure::find_working_successor, failed, kernel_.now());
  const auto& st = nodes_[n];
  std::vector<NodeIndex> candidates;
  auto add = [&](NodeIndex x) {
    if (x == n || x == failed) return;
    if (std::find(candidates.begin(), candidates.end(), x) == candidates.end()) candidates.push_back(x);
  };
  for (NodeIndex x : st.peers.successor_list) add(x);
  for (const auto& f : st.peers.fingers) {
    if (f) add(*f);
  }
  try_successor_candidates(n, std::move(candidates), 0, std::move(done));
}

void Overlay::try_successor_candidates(NodeIndex n, std::vector<NodeIndex> candidates, std::size_t idx,
                                       OutcomeCallback done) {
  if (idx == candidates.size()) {
    if (n == config_.bootstrap) {
      auto& st = nodes_[n];
      st.peers.successor = n;
      st.peers.successor_list.clear();
      done(Outcome::access_failed);
      return;
    }
    // lost every known successor: re-enter through the bootstrap node
    lookup_impl(n, nodes_[n].id.next(), config_.bootstrap, LookupPurpose::join,
                [this, n, done](const LookupResult& r) {
                  if (!r.failed && r.result != n) {
                    nodes_[n].peers.successor = r.result;
                    set_successor_list(n, {r.result});
                  }
                  done(Outcome::access_failed);
                });
    return;
  }
  const NodeIndex candidate = candidates[idx];
  call(n, candidate, Rpc::ping, nodes_[n].id,
       [this, n, candidates = std::move(candidates), idx, done](std::optional<Reply> reply) mutable {
         if (reply) {
           auto& st = nodes_[n];
           st.peers.successor = candidates[idx];
           std::vector<NodeIndex> rest;
           for (NodeIndex x : st.peers.successor_list) {
             if (std::find(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(idx), x) ==
                 candidates.begin() + static_cast<std::ptrdiff_t>(idx)) {
               rest.push_back(x);
             }
           }
           std::vector<NodeIndex> list{candidates[idx]};
           for (NodeIndex x : rest) {
             if (x != candidates[idx]) list.push_back(x);
           }
           set_successor_list(n, std::move(list));
           done(Outcome::access_failed);
           return;
         }
         try_successor_candidates(n, std::move(candidates), idx + 1, std::move(done));
       });
}

void Overlay::fix_next_finger(NodeIndex n, OutcomeCallback done) {
  auto& st = nodes_.at(n);
  if (!st.alive || !st.joined) throw std::logic_error("fix_next_finger: node is not part of the ring");
  auto report = reporter(observer_, kernel_, n, MaintenanceOp::fix_next_finger, std::move(done));
  const unsigned i = st.peers.next_finger;
  st.peers.next_finger = (i + 1) % config_.bits;
  const RingKey target = st.id + pow2_[i];
  lookup_impl(n, target, std::nullopt, LookupPurpose::maintenance, [this, n, i, report](const LookupResult& r) {
    if (r.failed) {
      report(Outcome::access_failed);
      return;
    }
    auto& entry = nodes_[n].peers.fingers[i];
    const bool changed = entry != r.result;
    entry = r.result;
    report(changed ? Outcome::effective : Outcome::non_effective);
  });
}

void Overlay::check_predecessor(NodeIndex n, OutcomeCallback done) {
  auto& st = nodes_.at(n);
  if (!st.alive || !st.joined) throw std::logic_error("check_predecessor: node is not part of the ring");
  auto report = reporter(observer_, kernel_, n, MaintenanceOp::check_predecessor, std::move(done));
  const auto p = st.peers.predecessor;
  if (!p || *p == n) {
    report(Outcome::non_effective);
    return;
  }
  const NodeIndex pred = *p;
  call(n, pred, Rpc::ping, st.id, [this, n, pred, report](std::optional<Reply> reply) {
    if (reply) {
      report(Outcome::non_effective);
      return;
    }
    if (observer_) observer_->on_peer_failure(n, PeerFailure::predecessor, pred, kernel_.now());
    auto& me = nodes_[n];
    if (me.peers.predecessor == pred) me.peers.predecessor.reset();
    report(Outcome::effective);
  });
}

// --- periodic scheduling ----------------------------------------------------

Overlay::Periodic& Overlay::periodic(NodeIndex n, MaintenanceOp op) {
  return *periodic_.at(n)[static_cast<std::size_t>(op)];
}

const Overlay::Periodic& Overlay::periodic(NodeIndex n, MaintenanceOp op) const {
  return *periodic_.at(n)[static_cast<std::size_t>(op)];
}

void Overlay::reset_periodic(NodeIndex n) {
  for (auto& p : periodic_[n]) {
    if (p->pending) kernel_.cancel(*p->pending);
    *p = Periodic{};
  }
}

void Overlay::start_periodic_maintenance(NodeIndex n) {
  reset_periodic(n);
  for (auto op : kMaintenanceOps) {
    auto& p = periodic(n, op);
    const TimeMs interval = nodes_[n].interval(op);
    const TimeMs offset = phase_rng_.uniform_int(0, interval - 1);
    p.active = true;
    p.last_start = kernel_.now() + offset - interval;
    schedule_periodic(n, op);
  }
}

void Overlay::schedule_periodic(NodeIndex n, MaintenanceOp op) {
  auto& p = periodic(n, op);
  const TimeMs due = std::max(kernel_.now(), p.last_start + nodes_[n].interval(op));
  p.pending = kernel_.schedule_at(due, guarded(n, [this, n, op] { on_periodic_due(n, op); }));
}

void Overlay::on_periodic_due(NodeIndex n, MaintenanceOp op) {
  auto& p = periodic(n, op);
  p.pending.reset();
  if (!p.active) return;
  p.last_start = kernel_.now();
  if (!p.running) execute(n, op, true);
  if (p.active && !p.pending) schedule_periodic(n, op);
}

void Overlay::execute(NodeIndex n, MaintenanceOp op, bool /*periodic*/) {
  periodic(n, op).running = true;
  run_maintenance(n, op, [this, n, op](Outcome) { periodic(n, op).running = false; });
}

void Overlay::set_interval(NodeIndex n, MaintenanceOp op, TimeMs interval) {
  if (interval <= 0) throw std::invalid_argument("maintenance interval must be positive");
  auto& st = nodes_.at(n);
  st.intervals[static_cast<std::size_t>(op)] = interval;
  auto& p = periodic(n, op);
  if (p.active && p.pending) {
    kernel_.cancel(*p.pending);
    p.pending.reset();
    schedule_periodic(n, op);
  }
}

bool Overlay::run_immediately(NodeIndex n, MaintenanceOp op) {
  const auto& st = nodes_.at(n);
  if (!st.alive || !st.joined) return false;
  if (periodic(n, op).running) return false;
  execute(n, op, false);
  return true;
}

bool Overlay::is_running(NodeIndex n, MaintenanceOp op) const { return periodic(n, op).running; }

// --- inspection -------------------------------------------------------------

std::size_t Overlay::ring_walk(NodeIndex gateway) const {
  const auto& g = nodes_.at(gateway);
  if (!g.alive || !g.joined) return 0;
  std::unordered_set<NodeIndex> seen{gateway};
  NodeIndex cur = gateway;
  for (;;) {
    const auto& next = nodes_[cur].peers.successor;
    if (!next || *next == gateway) break;
    const auto& st = nodes_[*next];
    if (!st.alive || !st.joined || seen.count(*next)) break;
    seen.insert(*next);
    cur = *next;
  }
  return seen.size();
}

std::uint64_t Overlay::total_bytes() const {
  std::uint64_t total = 0;
  for (const auto& st : nodes_) total += st.bytes_sent;
  return total;
}

}  // namespace amsim::overlay
