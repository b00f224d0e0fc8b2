#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amsim/gamf/knowledge.hpp"
#include "amsim/gamf/types.hpp"

namespace amsim::gamf {

class Framework;

/// Passed to an adapter's action when one of its triggers fires.
struct FiringContext {
  Framework& framework;
  const std::string& adapter_id;
  TimeMs now;
  /// The record that caused an on-event or custom firing; null for periodic firings.
  const Record* cause = nullptr;
};

struct Firing {
  TimeMs time = 0;
  std::string adapter_id;
  enum class Cause { periodic, on_event, custom } cause = Cause::periodic;

  bool operator==(const Firing&) const = default;
};

/// Generic autonomic-management framework: adapter registry, shared knowledge
/// and the trigger engine that runs metric extractors and policy evaluators.
///
/// Ordering rules:
///  - advance() fires periodic triggers by (due time, adapter id), catching up
///    on every missed period;
///  - on-event triggers fire synchronously, in registration order, after the
///    event is stored;
///  - custom triggers are evaluated after on-event triggers and at the end of
///    every advance(), in adapter id order.
class Framework {
 public:
  using Action = std::function<void(FiringContext&)>;

  explicit Framework(TimeMs start = 0) : clock_(start) {}
  Framework(const Framework&) = delete;
  Framework& operator=(const Framework&) = delete;

  void register_adapter(AdapterDescriptor descriptor, Action action = {});
  /// Removes the adapter and its triggers. Protected adapters cannot be removed.
  void unregister(std::string_view adapter_id);

  bool contains(std::string_view adapter_id) const;
  std::size_t adapter_count() const;
  /// Ids of adapters registered for `facet`, in registration order.
  std::vector<std::string> facet(std::string_view facet) const;
  std::optional<AdapterDescriptor> descriptor(std::string_view adapter_id) const;

  void add_trigger(std::string_view adapter_id, TriggerSpec spec);

  /// Stores an event on behalf of `generator_id` and fires matching triggers.
  /// Returns the ids of the adapters fired as a consequence.
  std::vector<std::string> record_event(std::string_view generator_id, Event event);

  /// Stores a metric value on behalf of a registered metric extractor.
  void record_metric(std::string_view extractor_id, MetricValue metric);

  std::vector<Record> query(const KnowledgeFilter& filter, std::string_view caller = {}) {
    return knowledge_.query(filter, caller);
  }

  /// Moves the framework clock to `now`, firing every due periodic trigger.
  std::vector<std::string> advance(TimeMs now);

  TimeMs clock() const;
  /// Earliest due time over all periodic triggers.
  std::optional<TimeMs> next_due() const;

  Knowledge& knowledge() { return knowledge_; }
  const Knowledge& knowledge() const { return knowledge_; }

  /// Every firing so far, in order. Identical call sequences give identical logs.
  std::vector<Firing> firing_log() const;

 private:
  struct Adapter {
    AdapterDescriptor descriptor;
    Action action;
    std::uint64_t order = 0;
  };
  struct Trigger {
    std::string adapter_id;
    TriggerSpec spec;
    TimeMs next_due = 0;  // periodic only
    std::uint64_t order = 0;
  };
  struct Pending {
    std::string adapter_id;
    TimeMs time;
    Firing::Cause cause;
  };

  void fire(const std::vector<Pending>& pending, const Record* cause, std::vector<std::string>& fired);
  void collect_custom(TimeMs now, const Record* latest, std::vector<Pending>& out);

  mutable std::recursive_mutex mu_;
  Knowledge knowledge_;
  std::map<std::string, Adapter, std::less<>> adapters_;
  std::map<std::string, std::string, std::less<>> claims_;  // event type -> generator id
  std::vector<Trigger> triggers_;
  std::vector<Firing> log_;
  TimeMs clock_;
  std::uint64_t next_order_ = 0;
};

}  // namespace amsim::gamf
