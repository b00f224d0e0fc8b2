#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace amsim::analytics {

struct DistributionSummary {
  std::size_t n = 0;
  double mean = 0;
  double ci90 = 0;  // half-width, normal approximation 1.645 s / sqrt(n)
  double s = 0;     // sample standard deviation (n - 1); 0 for a single value
  double min = 0;
  double q1 = 0;
  double q2 = 0;
  double q3 = 0;
  double max = 0;
};

/// Quartiles use linear interpolation between order statistics
/// (position q (n - 1) in the sorted values). Throws on an empty input.
DistributionSummary summarize(std::vector<double> values);

/// Linear-interpolation quantile of already sorted values.
double quantile_sorted(const std::vector<double>& sorted, double q);

double mean(const std::vector<double>& values);
/// Population standard deviation (divides by n).
double population_sd(const std::vector<double>& values);

/// Reproducibility score over repeated runs of one experiment: for every
/// window, the population standard deviation across runs divided by the mean
/// across runs, averaged over windows. Series are truncated to the shortest;
/// windows where a run has no value or the mean is 0 are skipped.
/// Throws with fewer than 2 runs or when no window is usable.
double nsd(const std::vector<std::vector<std::optional<double>>>& runs);
double nsd(const std::vector<std::vector<double>>& runs);

/// mean(policy) / mean(baseline); throws if the baseline mean is not positive.
double normalize(const std::vector<double>& policy, const std::vector<double>& baseline);

}  // namespace amsim::analytics
