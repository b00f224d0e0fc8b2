#include "amsim/scenario/workload.hpp"

#include <numeric>
#include <stdexcept>

#include "amsim/scenario/trace.hpp"
#include "amsim/sim/rng.hpp"

namespace amsim::scenario {

const char* to_string(WorkloadKind kind) {
  switch (kind) {
    case WorkloadKind::light: return "light";
    case WorkloadKind::heavy: return "heavy";
    case WorkloadKind::variable: return "variable";
    case WorkloadKind::trace: return "trace";
  }
  return "unknown";
}

std::optional<WorkloadKind> parse_workload_kind(std::string_view s) {
  for (auto k : {WorkloadKind::light, WorkloadKind::heavy, WorkloadKind::variable, WorkloadKind::trace}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

std::vector<LookupBatch> build_workload(const Workload& w, unsigned bits) {
  sim::Rng rng(sim::derive_seed(w.seed, {sim::hash_tag("workload")}));
  auto single = [&](Anchor anchor, TimeMs delay) {
    return LookupBatch{anchor, delay, {RingKey::random(rng, bits)}, BatchMode::parallel};
  };
  std::vector<LookupBatch> out;
  switch (w.kind) {
    case WorkloadKind::light:
      if (w.light_count == 0) throw std::invalid_argument("light workload needs lookups");
      for (std::size_t i = 0; i < w.light_count; ++i) {
        out.push_back(single(Anchor::absolute, static_cast<TimeMs>(i) * w.light_gap_ms));
      }
      break;
    case WorkloadKind::heavy:
      if (w.heavy_count == 0) throw std::invalid_argument("heavy workload needs lookups");
      for (std::size_t i = 0; i < w.heavy_count; ++i) out.push_back(single(Anchor::after_previous, 0));
      break;
    case WorkloadKind::variable:
      if (w.bursts == 0 || w.burst_size == 0) throw std::invalid_argument("variable workload needs lookups");
      for (std::size_t b = 0; b < w.bursts; ++b) {
        for (std::size_t i = 0; i < w.burst_size; ++i) {
          out.push_back(single(Anchor::after_previous, (b > 0 && i == 0) ? w.burst_gap_ms : 0));
        }
      }
      break;
    case WorkloadKind::trace:
      out = expand_trace(parse_trace_file(w.trace_path), bits);
      break;
  }
  return out;
}

std::size_t lookup_count(const std::vector<LookupBatch>& batches) {
  return std::accumulate(batches.begin(), batches.end(), std::size_t{0},
                         [](std::size_t n, const LookupBatch& b) { return n + b.keys.size(); });
}

}  // namespace amsim::scenario
