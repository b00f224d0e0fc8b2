#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace amsim::sim {

/// Simulated time in integer milliseconds. The overlay layer never reads a wall clock.
using TimeMs = std::int64_t;

/// Single-threaded discrete-event kernel.
///
/// Events due at the same instant run in scheduling order, so a run is a pure
/// function of the sequence of schedule/cancel calls. `Time` is an integer
/// millisecond clock for the overlay and a double-precision second clock for
/// the store-client layer.
template <typename Time>
class EventKernel {
 public:
  using Action = std::function<void()>;
  using Handle = std::uint64_t;

  explicit EventKernel(Time start = Time{}) : now_(start) {}

  EventKernel(const EventKernel&) = delete;
  EventKernel& operator=(const EventKernel&) = delete;

  Time now() const { return now_; }

  Handle schedule_at(Time when, Action action) {
    if (when < now_) throw std::logic_error("EventKernel: cannot schedule in the past");
    const Handle h = next_seq_++;
    queue_.push(Entry{when, h});
    actions_.emplace(h, std::move(action));
    return h;
  }

  Handle schedule_after(Time delay, Action action) {
    return schedule_at(now_ + delay, std::move(action));
  }

  /// Returns false if the event already ran or was cancelled before.
  bool cancel(Handle h) { return actions_.erase(h) > 0; }

  bool is_pending(Handle h) const { return actions_.count(h) > 0; }

  std::size_t pending() const { return actions_.size(); }

  std::optional<Time> next_time() {
    drop_cancelled();
    if (queue_.empty()) return std::nullopt;
    return queue_.top().time;
  }

  /// Runs the earliest pending event. Returns false when nothing is left.
  bool step() {
    drop_cancelled();
    if (queue_.empty()) return false;
    const Entry e = queue_.top();
    queue_.pop();
    auto it = actions_.find(e.seq);
    Action action = std::move(it->second);
    actions_.erase(it);
    now_ = e.time;
    ++executed_;
    action();
    return true;
  }

  /// Runs every event due at or before `until`, then parks the clock at `until`.
  void run_until(Time until) {
    stopped_ = false;
    while (!stopped_) {
      auto t = next_time();
      if (!t || *t > until) break;
      step();
    }
    if (!stopped_ && now_ < until) now_ = until;
  }

  void run() {
    stopped_ = false;
    while (!stopped_ && step()) {
    }
  }

  /// Makes the innermost run()/run_until() return after the current event.
  void stop() { stopped_ = true; }
  bool stopped() const { return stopped_; }

  std::uint64_t executed() const { return executed_; }

 private:
  struct Entry {
    Time time;
    Handle seq;
    bool operator>(const Entry& o) const {
      if (time != o.time) return time > o.time;
      return seq > o.seq;
    }
  };

  void drop_cancelled() {
    while (!queue_.empty() && actions_.count(queue_.top().seq) == 0) queue_.pop();
  }

  Time now_;
  Handle next_seq_ = 0;
  std::uint64_t executed_ = 0;
  bool stopped_ = false;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue_;
  std::unordered_map<Handle, Action> actions_;
};

}  // namespace amsim::sim
