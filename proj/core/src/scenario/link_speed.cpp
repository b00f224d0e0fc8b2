#include "amsim/scenario/link_speed.hpp"

#include <cmath>
#include <stdexcept>

#include "amsim/sim/rng.hpp"

namespace amsim::scenario {

const char* to_string(NetworkKind kind) {
  switch (kind) {
    case NetworkKind::server_bottleneck: return "server_bottleneck";
    case NetworkKind::client_bottleneck: return "client_bottleneck";
    case NetworkKind::none: return "none";
    case NetworkKind::temporally_varying: return "temporally_varying";
  }
  return "unknown";
}

std::optional<NetworkKind> parse_network_kind(std::string_view s) {
  for (auto k : {NetworkKind::server_bottleneck, NetworkKind::client_bottleneck, NetworkKind::none,
                 NetworkKind::temporally_varying}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

LinkSpeedSchedule::LinkSpeedSchedule(NetworkKind kind, std::size_t servers, std::uint64_t seed, VaryingLinks varying)
    : kind_(kind), servers_(servers), seed_(seed), varying_(varying) {
  if (servers == 0) throw std::invalid_argument("need at least one server");
  switch (kind) {
    case NetworkKind::server_bottleneck:
      client_ = {78e6, 0.0};
      server_.assign(servers, {3e6, 0.020});
      break;
    case NetworkKind::client_bottleneck:
      client_ = {3e6, 0.020};
      server_.assign(servers, {22e6, 0.0});
      break;
    case NetworkKind::none:
      client_ = {18e6, 0.0};
      server_.assign(servers, {18e6, 0.0});
      break;
    case NetworkKind::temporally_varying:
      if (!(varying.period_s > 0) || !(varying.min_bandwidth_bps > 0) ||
          varying.max_bandwidth_bps < varying.min_bandwidth_bps || varying.max_latency_s < 0) {
        throw std::invalid_argument("invalid varying link parameters");
      }
      break;
  }
}

LinkSpeedSchedule LinkSpeedSchedule::fixed(LinkParams client, LinkParams server, std::size_t servers) {
  return fixed(client, std::vector<LinkParams>(servers, server));
}

LinkSpeedSchedule LinkSpeedSchedule::fixed(LinkParams client, std::vector<LinkParams> servers) {
  if (!(client.bandwidth_bps > 0)) throw std::invalid_argument("bandwidth must be positive");
  for (const auto& p : servers) {
    if (!(p.bandwidth_bps > 0)) throw std::invalid_argument("bandwidth must be positive");
  }
  LinkSpeedSchedule s(NetworkKind::none, servers.size());
  s.client_ = client;
  s.server_ = std::move(servers);
  return s;
}

LinkParams LinkSpeedSchedule::varying(std::uint64_t participant, double t) const {
  const auto period = static_cast<std::uint64_t>(std::floor(std::max(t, 0.0) / varying_.period_s));
  sim::Rng rng(sim::derive_seed(seed_, {sim::hash_tag("links"), participant, period}));
  const double u = rng.unit();
  return {varying_.min_bandwidth_bps + u * (varying_.max_bandwidth_bps - varying_.min_bandwidth_bps),
          varying_.max_latency_s * (1.0 - u)};
}

LinkParams LinkSpeedSchedule::client(double t) const {
  return kind_ == NetworkKind::temporally_varying ? varying(0, t) : client_;
}

LinkParams LinkSpeedSchedule::server(std::size_t i, double t) const {
  if (i >= servers_) throw std::out_of_range("server index");
  return kind_ == NetworkKind::temporally_varying ? varying(i + 1, t) : server_[i];
}

}  // namespace amsim::scenario
