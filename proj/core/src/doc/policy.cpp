#include "amsim/doc/policy.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace amsim::doc {

DocPolicyConfig doc_policy(int id) {
  DocPolicyConfig c;
  switch (id) {
    case 0:
      c.mode = DocMode::static_doc;
      c.initial_doc = 1;
      break;
    case 1:
      c.mode = DocMode::static_doc;
      c.initial_doc = 4;
      break;
    case 2: c.t_ffr = 0.1; break;
    case 3: c.t_ffr = 0.3; break;
    case 4: c.t_ffr = 0.5; break;
    default: throw std::invalid_argument("unknown DOC policy " + std::to_string(id));
  }
  return c;
}

namespace {

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

DocMetrics extract_doc_metrics(std::size_t fetches, std::size_t failed, const std::vector<double>& edtts,
                               const std::vector<double>& client_bw, const std::vector<double>& server_bw,
                               unsigned current_doc) {
  if (failed > fetches) throw std::invalid_argument("more failures than fetches");
  DocMetrics m;
  m.current_doc = current_doc;
  if (fetches > 0) m.ffr = static_cast<double>(failed) / static_cast<double>(fetches);
  if (!edtts.empty()) {
    const double mu = mean_of(edtts);
    double ss = 0;
    for (double e : edtts) ss += (e - mu) * (e - mu);
    if (mu > 0) m.ftv = std::sqrt(ss / static_cast<double>(edtts.size())) / mu;
  }
  if (!client_bw.empty() && !server_bw.empty()) {
    const double s = mean_of(server_bw);
    if (s > 0) m.bn = mean_of(client_bw) / s;
  }
  return m;
}

unsigned doc_policy_step(const DocMetrics& m, const DocPolicyConfig& c) {
  if (m.current_doc < 1 || m.current_doc > c.max_doc) throw std::invalid_argument("current DOC out of range");
  if (c.mode == DocMode::static_doc) return m.current_doc;
  const bool ffr_high = m.ffr > c.t_ffr;
  const bool ftv_high = m.ftv > c.t_ftv;
  const unsigned doc = m.current_doc;
  if (doc < c.max_doc && ffr_high && ftv_high) return c.max_doc;
  if (doc < c.max_doc && (ffr_high || ftv_high)) return doc + 1;
  if (doc > 1 && !ffr_high && !ftv_high) return m.bn < c.t_bn ? 1 : doc - 1;
  return doc;
}

}  // namespace amsim::doc
