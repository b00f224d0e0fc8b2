#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "amsim/analytics/expected_time.hpp"
#include "amsim/sim/event_kernel.hpp"

namespace amsim::analytics {

using sim::TimeMs;

struct LookupRecord {
  TimeMs issued_at = 0;
  bool failed = false;
  TimeMs duration = 0;  // lookup time, or lookup error time if failed
};

/// Bytes sent by any node at time t.
struct ByteSample {
  TimeMs t = 0;
  std::uint64_t bytes = 0;
};

struct UlmWindow {
  TimeMs from = 0;
  TimeMs to = 0;
  std::optional<double> elt;  // present iff the window has a successful lookup
  std::uint64_t nu = 0;       // bytes sent during [from, to)
  double ler = 0;             // failed / issued
  std::size_t lookups = 0;
  std::size_t failures = 0;
  double mean_lt = 0;
  double mean_let = 0;
};

inline constexpr TimeMs kDefaultWindowMs = 5 * 60 * 1000;

/// Groups lookups by issue time into windows of `width` starting at `origin`
/// (default: the first issue time). Windows without lookups are omitted.
/// Records must be sorted by issue time.
std::vector<UlmWindow> window_aggregate(const std::vector<LookupRecord>& records,
                                        const std::vector<ByteSample>& bytes, TimeMs width = kDefaultWindowMs,
                                        unsigned retry_cap = kDefaultRetryCap,
                                        std::optional<TimeMs> origin = std::nullopt);

/// One expected lookup time over the whole run. Throws if nothing succeeded.
double holistic_elt(const std::vector<LookupRecord>& records, unsigned retry_cap = kDefaultRetryCap);

}  // namespace amsim::analytics
