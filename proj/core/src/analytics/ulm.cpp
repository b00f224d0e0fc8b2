#include "amsim/analytics/ulm.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace amsim::analytics {

namespace {

struct Accumulator {
  std::size_t lookups = 0;
  std::size_t failures = 0;
  double lt_sum = 0;
  double let_sum = 0;

  void add(const LookupRecord& r) {
    ++lookups;
    if (r.failed) {
      ++failures;
      let_sum += static_cast<double>(r.duration);
    } else {
      lt_sum += static_cast<double>(r.duration);
    }
  }
  std::size_t successes() const { return lookups - failures; }
  double mean_lt() const { return successes() ? lt_sum / static_cast<double>(successes()) : 0.0; }
  double mean_let() const { return failures ? let_sum / static_cast<double>(failures) : 0.0; }
  double ler() const { return lookups ? static_cast<double>(failures) / static_cast<double>(lookups) : 0.0; }
};

std::optional<double> elt_of(const Accumulator& a, unsigned retry_cap) {
  if (a.successes() == 0) return std::nullopt;
  // a window of zero-latency lookups would have mean_lt 0; keep the formula's domain
  const double lt = std::max(a.mean_lt(), 1e-9);
  return expected_lookup_time(lt, a.mean_let(), a.ler(), retry_cap);
}

}  // namespace

std::vector<UlmWindow> window_aggregate(const std::vector<LookupRecord>& records, const std::vector<ByteSample>& bytes,
                                        TimeMs width, unsigned retry_cap, std::optional<TimeMs> origin) {
  if (width <= 0) throw std::invalid_argument("window width must be positive");
  if (records.empty()) return {};
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].issued_at < records[i - 1].issued_at) throw std::invalid_argument("records must be time-sorted");
  }
  const TimeMs start = origin.value_or(records.front().issued_at);
  auto index_of = [&](TimeMs t) { return (t - start) / width; };
  std::map<TimeMs, Accumulator> acc;
  for (const auto& r : records) {
    if (r.issued_at < start) continue;
    acc[index_of(r.issued_at)].add(r);
  }
  std::map<TimeMs, std::uint64_t> nu;
  for (const auto& b : bytes) {
    if (b.t < start) continue;
    nu[index_of(b.t)] += b.bytes;
  }
  std::vector<UlmWindow> out;
  for (const auto& [idx, a] : acc) {
    UlmWindow w;
    w.from = start + idx * width;
    w.to = w.from + width;
    w.lookups = a.lookups;
    w.failures = a.failures;
    w.ler = a.ler();
    w.mean_lt = a.mean_lt();
    w.mean_let = a.mean_let();
    w.elt = elt_of(a, retry_cap);
    auto it = nu.find(idx);
    w.nu = it == nu.end() ? 0 : it->second;
    out.push_back(w);
  }
  return out;
}

double holistic_elt(const std::vector<LookupRecord>& records, unsigned retry_cap) {
  Accumulator a;
  for (const auto& r : records) a.add(r);
  auto elt = elt_of(a, retry_cap);
  if (!elt) throw std::invalid_argument("holistic_elt: no successful lookup");
  return *elt;
}

}  // namespace amsim::analytics
