#include "amsim/scenario/churn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "amsim/sim/rng.hpp"

namespace amsim::scenario {

const char* to_string(ChurnKind kind) {
  switch (kind) {
    case ChurnKind::none: return "none";
    case ChurnKind::low: return "low";
    case ChurnKind::high: return "high";
    case ChurnKind::locally_varying: return "locally_varying";
    case ChurnKind::temporally_varying: return "temporally_varying";
  }
  return "unknown";
}

std::optional<ChurnKind> parse_churn_kind(std::string_view s) {
  for (auto k : {ChurnKind::none, ChurnKind::low, ChurnKind::high, ChurnKind::locally_varying,
                 ChurnKind::temporally_varying}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

ChurnPattern doc_high_churn(std::uint64_t seed) {
  ChurnPattern p;
  p.kind = ChurnKind::high;
  p.high_on = {37'000, 5'000};
  p.high_off = {27'000, 2'000};
  p.initial_on = Jittered{20'000, 5'000};
  p.seed = seed;
  return p;
}

namespace {

TimeMs draw(sim::Rng& rng, const Jittered& j) {
  const TimeMs d = rng.uniform_int(j.mean - j.jitter, j.mean + j.jitter);
  return std::max<TimeMs>(d, 1);
}

void validate(const Jittered& j) {
  if (j.jitter < 0 || j.mean - j.jitter <= 0) throw std::invalid_argument("churn durations must be positive");
}

}  // namespace

bool low_phase_at(const ChurnPattern& pattern, TimeMs t) {
  switch (pattern.kind) {
    case ChurnKind::none:
    case ChurnKind::low: return true;
    case ChurnKind::high:
    case ChurnKind::locally_varying: return false;
    case ChurnKind::temporally_varying: return (t / pattern.phase_ms) % 2 == 0;
  }
  return true;
}

ChurnSchedule build_churn_schedule(const ChurnPattern& pattern, std::size_t nodes, TimeMs horizon,
                                   const std::vector<bool>& exempt) {
  if (horizon <= 0) throw std::invalid_argument("churn horizon must be positive");
  ChurnSchedule out(nodes);
  if (pattern.kind == ChurnKind::none) return out;
  for (const auto* j : {&pattern.low_on, &pattern.low_off, &pattern.high_on, &pattern.high_off}) validate(*j);
  if (pattern.initial_on) validate(*pattern.initial_on);
  if (pattern.low_fraction < 0 || pattern.low_fraction > 1) throw std::invalid_argument("low fraction must be in [0,1]");
  if (pattern.kind == ChurnKind::temporally_varying && pattern.phase_ms <= 0) {
    throw std::invalid_argument("phase length must be positive");
  }

  std::vector<std::size_t> churning;
  for (std::size_t n = 0; n < nodes; ++n) {
    if (n >= exempt.size() || !exempt[n]) churning.push_back(n);
  }

  // locally varying: a seeded choice of which nodes see low churn
  std::vector<bool> node_low(nodes, pattern.kind == ChurnKind::low);
  if (pattern.kind == ChurnKind::locally_varying) {
    sim::Rng pick(sim::derive_seed(pattern.seed, {sim::hash_tag("locally_varying")}));
    std::vector<std::size_t> order = churning;
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[static_cast<std::size_t>(pick.uniform_int(0, static_cast<std::int64_t>(i) - 1))]);
    }
    const auto low = static_cast<std::size_t>(std::llround(pattern.low_fraction * static_cast<double>(order.size())));
    for (std::size_t i = 0; i < low; ++i) node_low[order[i]] = true;
  }

  for (std::size_t n : churning) {
    sim::Rng rng(sim::derive_seed(pattern.seed, {sim::hash_tag("churn"), n}));
    auto is_low = [&](TimeMs t) {
      return pattern.kind == ChurnKind::temporally_varying ? low_phase_at(pattern, t) : node_low[n];
    };
    TimeMs t = 0;
    TimeMs extra = pattern.initial_on ? draw(rng, *pattern.initial_on) : 0;
    while (t < horizon) {
      const bool low = is_low(t);
      const TimeMs end_on = t + extra + draw(rng, low ? pattern.low_on : pattern.high_on);
      extra = 0;
      if (pattern.kind == ChurnKind::temporally_varying) {
        // an on-period ends at the next phase boundary and is redrawn under the new regime
        const TimeMs boundary = (t / pattern.phase_ms + 1) * pattern.phase_ms;
        if (end_on > boundary) {
          t = boundary;
          continue;
        }
      }
      if (end_on >= horizon) break;
      const TimeMs up = end_on + draw(rng, low ? pattern.low_off : pattern.high_off);
      out[n].push_back({end_on, up});
      t = up;
    }
  }
  return out;
}

}  // namespace amsim::scenario
