#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "amsim/experiment/config.hpp"
#include "amsim/experiment/csv.hpp"
#include "amsim/experiment/plan.hpp"
#include "amsim/scenario/trace.hpp"

namespace ex = amsim::experiment;
namespace fs = std::filesystem;

namespace {

int cmd_run(const std::string& config, const std::string& out, std::optional<std::uint64_t> seed, unsigned jobs,
            bool dump_knowledge, bool quiet) {
  ex::ExperimentPlan plan = ex::load_plan(config);
  if (seed) plan.seed = *seed;
  ex::RunOptions options;
  options.jobs = jobs;
  options.dump_knowledge = dump_knowledge;
  options.log = quiet ? nullptr : &std::cerr;
  const auto report = ex::run_plan(plan, out, options);
  std::cout << plan.name << ": " << report.cells << " cells, " << report.ran << " run, " << report.skipped
            << " already complete\n";
  std::cout << "summary: " << (fs::path(out) / "summary.csv").string() << '\n';
  return 0;
}

int cmd_summarize(const std::string& dir) {
  const auto rows = ex::summarize_dir(dir, true);
  std::cout << "group,policy,runs,elt_norm,nu_norm\n";
  for (const auto& r : rows) {
    std::cout << r.group << ',' << r.policy << ',' << r.runs << ',' << ex::format_double(r.elt_norm) << ','
              << ex::format_double(r.nu_norm) << '\n';
  }
  return 0;
}

int cmd_gen_trace(const amsim::scenario::TraceGenParams& params, const std::string& out) {
  const auto records = amsim::scenario::generate_trace(params);
  if (out.empty() || out == "-") {
    amsim::scenario::write_trace(std::cout, records);
    return 0;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "cannot write " << out << '\n';
    return 1;
  }
  amsim::scenario::write_trace(f, records);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Autonomic maintenance simulator"};
  app.require_subcommand(1);

  std::string config, out, dir, trace_out;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  bool dump_knowledge = false, quiet = false;

  auto* run = app.add_subcommand("run", "Run an experiment matrix");
  run->add_option("--config", config, "Experiment INI file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "Output directory")->required();
  run->add_option("--seed", seed, "Base seed (overrides the config)");
  run->add_option("--jobs", jobs, "Cells run in parallel")->check(CLI::Range(1u, 256u));
  run->add_flag("--dump-knowledge", dump_knowledge, "Write the gateway knowledge of overlay cells");
  run->add_flag("-q,--quiet", quiet, "No per-cell progress");

  auto* summarize = app.add_subcommand("summarize", "Recompute summary.csv from per-run CSVs");
  summarize->add_option("--dir", dir, "Result directory")->required()->check(CLI::ExistingDirectory);

  amsim::scenario::TraceGenParams gen;
  auto* gen_trace = app.add_subcommand("gen-trace", "Write a synthetic file-system trace");
  gen_trace->add_option("--records", gen.records);
  gen_trace->add_option("--mean-gap-ms", gen.mean_gap_ms);
  gen_trace->add_option("--max-depth", gen.max_depth);
  gen_trace->add_option("--data-fraction", gen.data_fraction)->check(CLI::Range(0.0, 1.0));
  gen_trace->add_option("--files", gen.files);
  gen_trace->add_option("--seed", gen.seed);
  gen_trace->add_option("--out", trace_out, "Output file, '-' for stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config, out, seed, jobs, dump_knowledge, quiet);
    if (*summarize) return cmd_summarize(dir);
    if (*gen_trace) return cmd_gen_trace(gen, trace_out);
  } catch (const ex::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
