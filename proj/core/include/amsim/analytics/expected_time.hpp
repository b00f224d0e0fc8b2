#pragma once

namespace amsim::analytics {

inline constexpr unsigned kDefaultRetryCap = 16;

/// Failure-weighted expected completion time when a failed attempt is retried
/// up to `n` times: sum over i = 0..n of (mean_lt + i * mean_let) (1 - p) p^i.
/// Throws std::invalid_argument unless 0 <= p_failure < 1 and mean_lt > 0.
double expected_lookup_time(double mean_lt, double mean_let, double p_failure, unsigned n = kDefaultRetryCap);

}  // namespace amsim::analytics
