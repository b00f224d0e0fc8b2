#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amsim/overlay/ring_key.hpp"
#include "amsim/sim/event_kernel.hpp"

namespace amsim::scenario {

using overlay::RingKey;
using sim::TimeMs;

enum class WorkloadKind { light, heavy, variable, trace };
const char* to_string(WorkloadKind kind);
std::optional<WorkloadKind> parse_workload_kind(std::string_view s);

enum class BatchMode { parallel, sequential };
enum class Anchor {
  absolute,        // `delay` is measured from workload start
  after_previous,  // `delay` is measured from completion of the previous batch
};

/// A set of keys issued together through the gateway. A batch completes when
/// all its lookups completed (successfully or not).
struct LookupBatch {
  Anchor anchor = Anchor::after_previous;
  TimeMs delay = 0;
  std::vector<RingKey> keys;
  BatchMode mode = BatchMode::parallel;
};

struct Workload {
  WorkloadKind kind = WorkloadKind::heavy;
  std::size_t light_count = 10;
  TimeMs light_gap_ms = 300'000;
  std::size_t heavy_count = 6000;
  std::size_t bursts = 10;
  std::size_t burst_size = 100;
  TimeMs burst_gap_ms = 300'000;
  /// trace only
  std::string trace_path;
  std::uint64_t seed = 1;
};

/// Deterministic batch list; synthetic kinds use single-key batches with keys
/// drawn uniformly from the ring.
std::vector<LookupBatch> build_workload(const Workload& workload, unsigned bits);

std::size_t lookup_count(const std::vector<LookupBatch>& batches);

}  // namespace amsim::scenario
