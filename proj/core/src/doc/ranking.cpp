#include "amsim/doc/ranking.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace amsim::doc {

double edtt(double latency_s, double size_bits, double bandwidth_bps) {
  if (!(bandwidth_bps > 0)) throw std::invalid_argument("bandwidth must be positive");
  return latency_s + size_bits / bandwidth_bps;
}

std::vector<std::size_t> rank_servers(const std::vector<ServerMonitor>& monitors, double size_bits) {
  struct Entry {
    bool unreachable;
    double score;
    std::size_t id;
  };
  std::vector<Entry> entries;
  for (const auto& m : monitors) {
    const bool down = !m.reachable || !(m.bandwidth_bps > 0);
    entries.push_back({down, down ? 0.0 : edtt(m.latency_s, size_bits, m.bandwidth_bps), m.server});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.unreachable, a.score, a.id) < std::tie(b.unreachable, b.score, b.id);
  });
  std::vector<std::size_t> out;
  for (const auto& e : entries) out.push_back(e.id);
  return out;
}

}  // namespace amsim::doc
