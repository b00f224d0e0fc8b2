#include <benchmark/benchmark.h>

#include <optional>

#include "amsim/experiment/overlay_experiment.hpp"

namespace {

using namespace amsim;

void BM_LookupOnFormedRing(benchmark::State& state) {
  sim::EventKernel<sim::TimeMs> kernel;
  overlay::OverlayConfig cfg;
  const std::size_t n = 64;
  overlay::Overlay ov(kernel, cfg, experiment::node_ids(n, cfg.bits, 1));
  ov.create_ring(0);
  for (overlay::NodeIndex i = 1; i < n; ++i) {
    kernel.schedule_at(static_cast<sim::TimeMs>(i) * 500, [&ov, i] {
      ov.bring_up(i);
      ov.join(i, 0);
    });
  }
  kernel.run_until(120'000);
  sim::Rng rng(2);
  for (auto _ : state) {
    std::optional<overlay::LookupResult> out;
    ov.lookup(0, overlay::RingKey::random(rng, cfg.bits), [&](const overlay::LookupResult& r) { out = r; });
    while (!out && kernel.step()) {
    }
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_LookupOnFormedRing);

void BM_SmallOverlayExperiment(benchmark::State& state) {
  experiment::OverlayExperimentConfig c;
  c.nodes = 8;
  c.churn.kind = scenario::ChurnKind::high;
  c.policies = manager::make_policy_set(manager::PolicySetId::policy2);
  c.workload.heavy_count = 200;
  c.warmup_ms = 20'000;
  for (auto _ : state) {
    auto r = experiment::run_overlay_experiment(c);
    benchmark::DoNotOptimize(r.events);
  }
}
BENCHMARK(BM_SmallOverlayExperiment)->Unit(benchmark::kMillisecond);

}  // namespace
