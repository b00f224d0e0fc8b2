#include <benchmark/benchmark.h>

#include "amsim/sim/event_kernel.hpp"
#include "amsim/sim/rng.hpp"

namespace {

void BM_KernelScheduleAndRun(benchmark::State& state) {
  const auto n = state.range(0);
  for (auto _ : state) {
    amsim::sim::EventKernel<amsim::sim::TimeMs> kernel;
    amsim::sim::Rng rng(1);
    std::int64_t fired = 0;
    for (std::int64_t i = 0; i < n; ++i) kernel.schedule_at(rng.uniform_int(0, 1'000'000), [&fired] { ++fired; });
    kernel.run();
    benchmark::DoNotOptimize(fired);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_KernelScheduleAndRun)->Arg(1 << 10)->Arg(1 << 16);

void BM_KernelCancel(benchmark::State& state) {
  for (auto _ : state) {
    amsim::sim::EventKernel<amsim::sim::TimeMs> kernel;
    for (int i = 0; i < 4096; ++i) {
      auto h = kernel.schedule_at(i, [] {});
      if (i % 2) kernel.cancel(h);
    }
    kernel.run();
  }
}
BENCHMARK(BM_KernelCancel);

}  // namespace
