#include "amsim/analytics/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace amsim::analytics {

double mean(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("mean of an empty list");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double population_sd(const std::vector<double>& values) {
  const double m = mean(values);
  double ss = 0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size()));
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of an empty list");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

DistributionSummary summarize(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("summarize needs at least one value");
  std::sort(values.begin(), values.end());
  DistributionSummary d;
  d.n = values.size();
  d.mean = mean(values);
  if (d.n > 1) {
    double ss = 0;
    for (double v : values) ss += (v - d.mean) * (v - d.mean);
    d.s = std::sqrt(ss / static_cast<double>(d.n - 1));
  }
  d.ci90 = 1.645 * d.s / std::sqrt(static_cast<double>(d.n));
  d.min = values.front();
  d.max = values.back();
  d.q1 = quantile_sorted(values, 0.25);
  d.q2 = quantile_sorted(values, 0.5);
  d.q3 = quantile_sorted(values, 0.75);
  return d;
}

double nsd(const std::vector<std::vector<std::optional<double>>>& runs) {
  if (runs.size() < 2) throw std::invalid_argument("nsd needs at least two runs");
  std::size_t windows = runs.front().size();
  for (const auto& r : runs) windows = std::min(windows, r.size());
  double total = 0;
  std::size_t used = 0;
  std::vector<double> column;
  for (std::size_t w = 0; w < windows; ++w) {
    column.clear();
    for (const auto& r : runs) {
      if (!r[w]) break;
      column.push_back(*r[w]);
    }
    if (column.size() != runs.size()) continue;
    const double m = mean(column);
    if (m == 0) continue;
    total += population_sd(column) / std::abs(m);
    ++used;
  }
  if (used == 0) throw std::invalid_argument("nsd: no window with values in every run");
  return total / static_cast<double>(used);
}

double nsd(const std::vector<std::vector<double>>& runs) {
  std::vector<std::vector<std::optional<double>>> wrapped;
  for (const auto& r : runs) wrapped.emplace_back(r.begin(), r.end());
  return nsd(wrapped);
}

double normalize(const std::vector<double>& policy, const std::vector<double>& baseline) {
  const double b = mean(baseline);
  if (!(b > 0)) throw std::invalid_argument("normalize: baseline mean must be positive");
  return mean(policy) / b;
}

}  // namespace amsim::analytics
