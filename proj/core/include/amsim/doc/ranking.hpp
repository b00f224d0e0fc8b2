#pragma once

#include <cstddef>
#include <vector>

#include "amsim/doc/model.hpp"

namespace amsim::doc {

/// Reference transfer size used for ranking.
inline constexpr double kReferenceSizeBits = kMByteBits;

/// Expected data transfer time L + S / BW.
double edtt(double latency_s, double size_bits, double bandwidth_bps);

/// Latest monitoring data of one server.
struct ServerMonitor {
  std::size_t server = 0;
  bool reachable = true;
  double latency_s = 0;
  double bandwidth_bps = 0;
};

/// Server ids by ascending EDTT; unreachable servers last; ties by id.
std::vector<std::size_t> rank_servers(const std::vector<ServerMonitor>& monitors,
                                      double size_bits = kReferenceSizeBits);

}  // namespace amsim::doc
