#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "amsim/experiment/doc_experiment.hpp"
#include "amsim/experiment/overlay_experiment.hpp"

namespace amsim::experiment {

enum class Layer { overlay, doc };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A seeded experiment matrix. Overlay cells: churn x workload x policy x
/// repetition. DOC cells: network x churn x workload x size x policy x repetition.
struct ExperimentPlan {
  Layer layer = Layer::overlay;
  std::string name = "experiment";
  unsigned repetitions = 3;
  std::uint64_t seed = 1;

  OverlayExperimentConfig overlay;  // shared settings of every overlay cell
  std::vector<scenario::ChurnKind> churn{scenario::ChurnKind::low};
  std::vector<scenario::WorkloadKind> workloads{scenario::WorkloadKind::heavy};
  std::vector<manager::PolicySetId> policies{manager::PolicySetId::policy0, manager::PolicySetId::policy1,
                                             manager::PolicySetId::policy2};
  manager::PolicySet custom_policy = manager::make_policy_set(manager::PolicySetId::custom);

  DocExperimentConfig doc;  // shared settings of every DOC cell
  std::vector<scenario::NetworkKind> networks{scenario::NetworkKind::server_bottleneck};
  std::vector<DocChurnKind> doc_churn{DocChurnKind::none};
  std::vector<DocWorkloadKind> doc_workloads{DocWorkloadKind::heavy};
  std::vector<double> sizes_kb{1024};
  std::vector<int> doc_policies{0, 1, 2, 3, 4};
};

/// INI-style configuration (sections [experiment], [overlay], [policy], [doc]).
/// Relative trace paths resolve against `base_dir`.
ExperimentPlan parse_plan(std::istream& in, const std::filesystem::path& base_dir = {});
ExperimentPlan load_plan(const std::filesystem::path& path);

}  // namespace amsim::experiment
