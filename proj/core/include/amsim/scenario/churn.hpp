#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "amsim/sim/event_kernel.hpp"

namespace amsim::scenario {

using sim::TimeMs;

enum class ChurnKind { none, low, high, locally_varying, temporally_varying };
const char* to_string(ChurnKind kind);
std::optional<ChurnKind> parse_churn_kind(std::string_view s);

/// Uniform on [mean - jitter, mean + jitter].
struct Jittered {
  TimeMs mean = 0;
  TimeMs jitter = 0;
};

struct ChurnPattern {
  ChurnKind kind = ChurnKind::none;
  Jittered low_on{8 * 3600 * 1000LL, 3600 * 1000LL};
  Jittered low_off{157'000, 20'000};
  Jittered high_on{200'000, 40'000};
  Jittered high_off{100'000, 20'000};
  /// locally varying: share of nodes under low churn, the rest see high churn
  double low_fraction = 0.25;
  /// temporally varying: length of each low / high phase; starts with a low phase
  TimeMs phase_ms = 1'000'000;
  /// Extra on-time before a node's first regular on-period.
  std::optional<Jittered> initial_on;
  std::uint64_t seed = 1;
};

/// The store-client churn: on 37 +- 5 s, off 27 +- 2 s, initial extra 20 +- 5 s.
ChurnPattern doc_high_churn(std::uint64_t seed);

struct Downtime {
  TimeMs down_at = 0;
  TimeMs up_at = 0;
};

using ChurnSchedule = std::vector<std::vector<Downtime>>;

/// Per-node down periods starting before `horizon`, relative to churn start.
/// Nodes flagged in `exempt` (e.g. the gateway) never go down.
ChurnSchedule build_churn_schedule(const ChurnPattern& pattern, std::size_t nodes, TimeMs horizon,
                                   const std::vector<bool>& exempt = {});

/// Whether the node-level pattern is in its low-churn regime at `t`.
bool low_phase_at(const ChurnPattern& pattern, TimeMs t);

}  // namespace amsim::scenario
