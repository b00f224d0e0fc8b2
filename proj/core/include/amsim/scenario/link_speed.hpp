#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace amsim::scenario {

/// Bandwidth in bits per second, latency in seconds.
struct LinkParams {
  double bandwidth_bps = 0;
  double latency_s = 0;
};

enum class NetworkKind { server_bottleneck, client_bottleneck, none, temporally_varying };
const char* to_string(NetworkKind kind);
std::optional<NetworkKind> parse_network_kind(std::string_view s);

struct VaryingLinks {
  double period_s = 10;
  double min_bandwidth_bps = 220e3;
  double max_bandwidth_bps = 22e6;
  double max_latency_s = 0.020;
};

/// Link parameters of the client and every server over time.
///
/// Static kinds keep one setting for the whole run. The temporally varying kind
/// redraws every participant's link each period: with u uniform on [0,1),
/// bandwidth = lo + u (hi - lo) and latency = max_latency (1 - u), so a fast
/// link is also a low-latency one.
class LinkSpeedSchedule {
 public:
  LinkSpeedSchedule(NetworkKind kind, std::size_t servers, std::uint64_t seed = 1, VaryingLinks varying = {});

  /// Uniform static links, mainly for tests.
  static LinkSpeedSchedule fixed(LinkParams client, LinkParams server, std::size_t servers);
  /// Static links with one setting per server.
  static LinkSpeedSchedule fixed(LinkParams client, std::vector<LinkParams> servers);

  NetworkKind kind() const { return kind_; }
  std::size_t servers() const { return servers_; }

  LinkParams client(double t) const;
  LinkParams server(std::size_t i, double t) const;

 private:
  LinkParams varying(std::uint64_t participant, double t) const;

  NetworkKind kind_;
  std::size_t servers_;
  std::uint64_t seed_;
  VaryingLinks varying_;
  LinkParams client_{};
  std::vector<LinkParams> server_;
};

}  // namespace amsim::scenario
