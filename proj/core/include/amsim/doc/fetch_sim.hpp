#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "amsim/scenario/link_speed.hpp"
#include "amsim/sim/event_kernel.hpp"

namespace amsim::doc {

/// Whether a server stays up for the whole of [from, to].
using Availability = std::function<bool(std::size_t server, double from, double to)>;

struct FetchRecord {
  std::size_t server = 0;
  double start = 0;
  double end = 0;  // completion, failure or cancellation time
  bool failed = false;
  bool cancelled = false;
};

struct GetResult {
  double issued = 0;
  double get_time = 0;
  bool failed = false;
  double bits = 0;  // transferred, including partial transfers of cancelled fetches
  std::vector<FetchRecord> fetches;
};

struct GetRequest {
  double size_bits = 0;
  unsigned doc = 1;
  /// Servers in preference order; every server appears at most once.
  std::vector<std::size_t> ranking;
};

/// Concurrent replica fetches on the event kernel.
///
/// A round launches `doc` fetches to the best untried servers; each shares the
/// client link, so its duration is the closed-form fetch time with the
/// round's fetch count as DOC and link parameters sampled at launch. The first
/// success completes the get and cancels the other fetches. A fetch from a
/// server that is down at any point of its transfer fails at its nominal
/// completion time. When every fetch of a round failed, the next round starts;
/// the get fails once the ranking is exhausted.
void simulate_get(sim::EventKernel<double>& kernel, const GetRequest& request,
                  const scenario::LinkSpeedSchedule& links, const Availability& available,
                  std::function<void(const GetResult&)> done);

/// Runs one get on a private kernel starting at `start`.
GetResult simulate_get(const GetRequest& request, const scenario::LinkSpeedSchedule& links,
                       const Availability& available, double start = 0);

}  // namespace amsim::doc
