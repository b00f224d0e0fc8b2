#pragma once

#include <cstddef>
#include <vector>

namespace amsim::doc {

struct DocMetrics {
  double ffr = 0;  // failed / initiated fetches
  double ftv = 0;  // population std / mean of monitored EDTTs
  double bn = 1;   // mean client bandwidth / mean server bandwidth
  unsigned current_doc = 1;
};

enum class DocMode { static_doc, autonomic };

struct DocPolicyConfig {
  DocMode mode = DocMode::autonomic;
  double t_ffr = 0.1;
  double t_ftv = 0.2;
  double t_bn = 0.8;
  unsigned initial_doc = 1;
  unsigned max_doc = 4;
  double eval_interval_s = 60;
};

/// Configurations 0..4: static DOC 1, static DOC 4, autonomic with
/// T_FFR 0.1 / 0.3 / 0.5 (T_FTV 0.2, T_BN 0.8, initial DOC 1).
DocPolicyConfig doc_policy(int id);
inline constexpr int kDocPolicyCount = 5;

/// Window defaults when there is nothing to measure: FFR 0, FTV 0, BN 1.
DocMetrics extract_doc_metrics(std::size_t fetches, std::size_t failed, const std::vector<double>& edtts,
                               const std::vector<double>& client_bw, const std::vector<double>& server_bw,
                               unsigned current_doc);

/// Next DOC:
///  - below R with FFR and FTV both high: R;
///  - below R with one of them high: one step up;
///  - above 1 with both low: 1 if BN shows a client-side bottleneck, else one step down;
///  - otherwise unchanged. Static mode never changes the DOC.
unsigned doc_policy_step(const DocMetrics& m, const DocPolicyConfig& c);

}  // namespace amsim::doc
