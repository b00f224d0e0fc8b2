#pragma once

#include <cstddef>
#include <vector>

namespace amsim::doc {

// Canonical units: sizes in bits, bandwidth in bits/s, latency and time in seconds.
inline constexpr double kKByteBits = 1024.0 * 8.0;
inline constexpr double kMByteBits = 1024.0 * 1024.0 * 8.0;

/// Inputs of the closed-form get-time model. Server vectors have one entry per replica (R).
struct DocModelParams {
  double size_bits = 0;
  double bw_client = 0;
  double l_client = 0;
  std::vector<double> bw_server;
  std::vector<double> l_server;
  double p_failure = 0;

  std::size_t replicas() const { return bw_server.size(); }
};

/// R identical servers.
DocModelParams uniform_params(std::size_t replicas, double size_bits, double bw_client, double l_client,
                              double bw_server, double l_server, double p_failure = 0);

/// 2 L_client + 2 L_server_i + S (1 / BW_server_i + doc / BW_client).
double fetch_time(const DocModelParams& p, std::size_t server, unsigned doc);

/// Mean single-replica fetch time over a uniformly random server choice.
double fetch_time_random(const DocModelParams& p);

/// Low DOC: t_rnd + sum over k = 1..R-1 of k t_rnd P^k.
double get_time_low_doc(const DocModelParams& p);
/// High DOC: min_i fetch_time(i, R).
double get_time_high_doc(const DocModelParams& p);
/// Perfect server ranking at DOC 1: min_i fetch_time(i, 1).
double get_time_perfect_srm(const DocModelParams& p);
/// Fastest of `doc` concurrent fetches without failures: min_i fetch_time(i, doc).
double get_time_concurrent(const DocModelParams& p, unsigned doc);

}  // namespace amsim::doc
