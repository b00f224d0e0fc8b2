#include "amsim/doc/model.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace amsim::doc {

namespace {

void validate(const DocModelParams& p) {
  if (p.bw_server.empty() || p.bw_server.size() != p.l_server.size()) {
    throw std::invalid_argument("need one bandwidth and latency per replica server");
  }
  if (!(p.size_bits > 0) || !(p.bw_client > 0) || p.l_client < 0) throw std::invalid_argument("invalid client parameters");
  for (std::size_t i = 0; i < p.bw_server.size(); ++i) {
    if (!(p.bw_server[i] > 0) || p.l_server[i] < 0) throw std::invalid_argument("invalid server parameters");
  }
  if (!(p.p_failure >= 0) || !(p.p_failure < 1)) throw std::invalid_argument("p_failure must be in [0, 1)");
}

}  // namespace

DocModelParams uniform_params(std::size_t replicas, double size_bits, double bw_client, double l_client,
                              double bw_server, double l_server, double p_failure) {
  DocModelParams p;
  p.size_bits = size_bits;
  p.bw_client = bw_client;
  p.l_client = l_client;
  p.bw_server.assign(replicas, bw_server);
  p.l_server.assign(replicas, l_server);
  p.p_failure = p_failure;
  return p;
}

double fetch_time(const DocModelParams& p, std::size_t server, unsigned doc) {
  validate(p);
  if (server >= p.replicas()) throw std::out_of_range("server index");
  if (doc < 1 || doc > p.replicas()) throw std::invalid_argument("doc must be in [1, R]");
  return 2 * p.l_client + 2 * p.l_server[server] + p.size_bits * (1.0 / p.bw_server[server] + doc / p.bw_client);
}

double fetch_time_random(const DocModelParams& p) {
  double sum = 0;
  for (std::size_t i = 0; i < p.replicas(); ++i) sum += fetch_time(p, i, 1);
  return sum / static_cast<double>(p.replicas());
}

double get_time_low_doc(const DocModelParams& p) {
  const double t = fetch_time_random(p);
  double sum = t;
  double pk = 1;
  for (std::size_t k = 1; k < p.replicas(); ++k) {
    pk *= p.p_failure;
    sum += static_cast<double>(k) * t * pk;
  }
  return sum;
}

double get_time_concurrent(const DocModelParams& p, unsigned doc) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.replicas(); ++i) best = std::min(best, fetch_time(p, i, doc));
  return best;
}

double get_time_high_doc(const DocModelParams& p) {
  return get_time_concurrent(p, static_cast<unsigned>(p.replicas()));
}

double get_time_perfect_srm(const DocModelParams& p) { return get_time_concurrent(p, 1); }

}  // namespace amsim::doc
