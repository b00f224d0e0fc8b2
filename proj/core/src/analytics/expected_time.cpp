#include "amsim/analytics/expected_time.hpp"

#include <cmath>
#include <stdexcept>

namespace amsim::analytics {

double expected_lookup_time(double mean_lt, double mean_let, double p_failure, unsigned n) {
  if (!(p_failure >= 0.0) || !(p_failure < 1.0)) throw std::invalid_argument("p_failure must be in [0, 1)");
  if (!(mean_lt > 0.0)) throw std::invalid_argument("mean lookup time must be positive");
  if (!(mean_let >= 0.0)) throw std::invalid_argument("mean lookup error time must be non-negative");
  double sum = 0.0;
  double weight = 1.0 - p_failure;
  for (unsigned i = 0; i <= n; ++i) {
    sum += (mean_lt + i * mean_let) * weight;
    weight *= p_failure;
  }
  return sum;
}

}  // namespace amsim::analytics
