#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "amsim/analytics/stats.hpp"
#include "amsim/experiment/config.hpp"

namespace amsim::experiment {

struct CellSpec {
  std::string group;   // e.g. overlay-low-heavy
  std::string policy;  // e.g. policy1
  unsigned repetition = 0;
  std::function<void(const std::filesystem::path& stem)> run;

  /// `<group>__<policy>__rep<r>`
  std::string stem() const;
};

struct RunOptions {
  unsigned jobs = 1;
  bool dump_knowledge = false;
  std::ostream* log = nullptr;
};

struct RunReport {
  std::size_t cells = 0;
  std::size_t ran = 0;
  std::size_t skipped = 0;
};

std::vector<CellSpec> plan_cells(const ExperimentPlan& plan, const RunOptions& options = {});

/// Runs every cell whose `<stem>.ulm.csv` does not exist yet, then writes the summary.
/// Each cell writes `.intervals.csv`/`.topology.csv` (overlay) or `.gets.csv`/`.doc.csv`
/// (DOC) before its `.ulm.csv`, all through a temporary file and rename.
RunReport run_plan(const ExperimentPlan& plan, const std::filesystem::path& out_dir, const RunOptions& options = {});

struct SummaryRow {
  std::string group;
  std::string policy;
  std::size_t runs = 0;
  double elt_mean = 0;
  double nu_mean = 0;
  double ler_mean = 0;
  double elt_norm = 1;
  double nu_norm = 1;
  std::optional<double> nsd_elt;
  std::optional<analytics::DistributionSummary> elt;
  analytics::DistributionSummary nu;
};

/// Reads every `*.ulm.csv` in `dir` and normalizes each policy against policy0
/// of the same group. Throws if the directory has no results or a group lacks policy0.
/// With `write`, also produces `summary.csv` and `distributions.csv`.
std::vector<SummaryRow> summarize_dir(const std::filesystem::path& dir, bool write = true);

}  // namespace amsim::experiment
