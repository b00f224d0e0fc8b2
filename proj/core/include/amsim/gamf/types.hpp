#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>

#include "amsim/sim/event_kernel.hpp"

namespace amsim::gamf {

using sim::TimeMs;

/// Adapter-defined key/value annotations. The framework never interprets them.
using Info = std::map<std::string, std::string>;

/// Time-stamped information about something that happened in the target system.
struct Event {
  std::string event_type;
  TimeMs timestamp = 0;
  Info payload;
};

/// A numerical metric computed by a metric extractor.
struct MetricValue {
  std::string metric_type;
  TimeMs timestamp = 0;
  double value = 0.0;
  Info info;
};

enum class RecordKind { event, metric };

/// Stored form of an Event or MetricValue. `seq` is the insertion index.
struct Record {
  RecordKind kind = RecordKind::event;
  std::string type;
  TimeMs timestamp = 0;
  double value = 0.0;
  Info info;
  std::uint64_t seq = 0;

  bool is_event() const { return kind == RecordKind::event; }
  bool is_metric() const { return kind == RecordKind::metric; }
};

enum class AdapterKind { event_generator, metric_extractor, policy_evaluator, effector };

const char* to_string(AdapterKind kind);

struct AdapterDescriptor {
  std::string adapter_id;
  AdapterKind kind = AdapterKind::metric_extractor;
  std::string facet;
  /// Only meaningful for event generators.
  std::set<std::string> claimed_event_types;
  bool is_protected = false;
};

class Knowledge;

struct Periodic {
  TimeMs interval = 0;
};

struct OnEvent {
  std::string event_type;
};

/// Arbitrary firing rule, evaluated after every stored record (with that record)
/// and at every advance() (with no record).
struct Custom {
  std::function<bool(TimeMs now, const Knowledge& knowledge, const Record* latest)> predicate;
};

using TriggerSpec = std::variant<Periodic, OnEvent, Custom>;

/// Selects records by type and half-open time window [from, to).
struct KnowledgeFilter {
  std::optional<std::set<std::string>> types;
  TimeMs from = 0;
  std::optional<TimeMs> to;  // unbounded when empty
  /// Only return records stored after the caller's previous consuming query
  /// (tracked per caller and per type).
  bool consume_since_last = false;

  static KnowledgeFilter of_type(std::string type) {
    KnowledgeFilter f;
    f.types = std::set<std::string>{std::move(type)};
    return f;
  }
};

class GamfError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Duplicate or unknown adapter id.
class RegistryError : public GamfError {
 public:
  using GamfError::GamfError;
};

/// Attempt to remove a protected adapter.
class ProtectionError : public GamfError {
 public:
  using GamfError::GamfError;
};

/// Event type owned by a different generator.
class ClaimError : public GamfError {
 public:
  using GamfError::GamfError;
};

class TimeRegressionError : public GamfError {
 public:
  using GamfError::GamfError;
};

}  // namespace amsim::gamf
