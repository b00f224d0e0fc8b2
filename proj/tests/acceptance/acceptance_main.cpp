#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>

#include "criteria.hpp"

namespace acc = amsim::acceptance;

namespace {

struct Criterion {
  const char* id;
  const char* name;
  double budget_s;
  std::function<acc::Verdict()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"1", "formula unit suite", 10, acc::formula_suite},
      {"2", "convergence oracle", 30, acc::convergence_oracle},
      {"3", "manager directionality", 120, acc::manager_directionality},
      {"4a", "low churn ULM ordering", 300, acc::low_churn_ordering},
      {"4b", "temporally varying fixNextFinger shape", 300, acc::temporal_churn_shape},
      {"5", "DOC crossover", 1, acc::doc_crossover},
      {"6", "DOC policy behaviour", 60, acc::doc_policy_behaviour},
      {"7", "reproducibility", 60, acc::reproducibility},
      {"8", "simulator vs closed form", 5, acc::simulator_closed_form},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    acc::Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      v.pass = false;
      v.detail += "; runtime over budget";
    }
    failed += !v.pass;
    std::printf("%s criterion %-3s %-40s %7.2fs (budget %gs)  %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                c.budget_s, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
