#include "amsim/experiment/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace amsim::experiment {

namespace pt = boost::property_tree;

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const pt::ptree& tree, const std::string& key, std::vector<T> fallback, Parse parse) {
  auto raw = tree.get_optional<std::string>(key);
  if (!raw) return fallback;
  std::vector<T> out;
  for (const auto& item : split_list(*raw)) {
    auto v = parse(item);
    if (!v) throw ConfigError("invalid value '" + item + "' for " + key);
    out.push_back(*v);
  }
  if (out.empty()) throw ConfigError(key + " must not be empty");
  return out;
}

double parse_real(const std::string& s, const std::string& key) {
  if (s == "inf" || s == "infinity") return manager::kInfinity;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid number '" + s + "' for " + key);
  }
}

template <typename T>
T get(const pt::ptree& tree, const std::string& key, T fallback) {
  try {
    return tree.get<T>(key, fallback);
  } catch (const pt::ptree_bad_data&) {
    throw ConfigError("invalid value for " + key);
  }
}

sim::TimeMs seconds_to_ms(double s) { return static_cast<sim::TimeMs>(std::llround(s * 1000.0)); }

void check_keys(const pt::ptree& tree) {
  static const std::set<std::string> known{
      "experiment.layer",      "experiment.name",        "experiment.repetitions", "experiment.seed",
      "experiment.policies",   "experiment.horizon_s",   "experiment.window_s",    "experiment.retry_cap",
      "overlay.nodes",         "overlay.bits",           "overlay.successor_list", "overlay.latency_ms",
      "overlay.timeout_ms",    "overlay.service_ms",     "overlay.warmup_s",       "overlay.join_spacing_ms",
      "overlay.churn",         "overlay.workload",       "overlay.trace",          "overlay.heavy_lookups",
      "overlay.light_lookups", "overlay.light_gap_s",    "overlay.bursts",         "overlay.burst_size",
      "overlay.burst_gap_s",   "overlay.min_interval_ms", "policy.nemo_k",         "policy.nemo_t",
      "policy.er_k",           "policy.er_t",            "policy.lilt_k",          "policy.lilt_t",
      "doc.network",           "doc.churn",              "doc.workload",           "doc.size_kb",
      "doc.servers",           "doc.noise",              "doc.monitor_s",          "doc.eval_s",
      "doc.heavy_gets",        "doc.churn_phase_s"};
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError("key '" + section + "' outside of a section");
    for (const auto& [key, value] : body) {
      (void)value;
      if (!known.count(section + "." + key)) throw ConfigError("unknown key '" + section + "." + key + "'");
    }
  }
}

}  // namespace

ExperimentPlan parse_plan(std::istream& in, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  check_keys(tree);
  ExperimentPlan plan;

  const auto layer = get<std::string>(tree, "experiment.layer", "overlay");
  if (layer == "overlay") {
    plan.layer = Layer::overlay;
  } else if (layer == "doc") {
    plan.layer = Layer::doc;
  } else {
    throw ConfigError("experiment.layer must be overlay or doc");
  }
  plan.name = get<std::string>(tree, "experiment.name", plan.name);
  const int reps = get<int>(tree, "experiment.repetitions", 3);
  if (reps < 1) throw ConfigError("experiment.repetitions must be at least 1");
  plan.repetitions = static_cast<unsigned>(reps);
  plan.seed = get<std::uint64_t>(tree, "experiment.seed", 1);
  const double horizon_s = get<double>(tree, "experiment.horizon_s", plan.layer == Layer::overlay ? 2400.0 : 14400.0);
  const double window_s = get<double>(tree, "experiment.window_s", 300.0);
  const int retry_cap = get<int>(tree, "experiment.retry_cap", 16);
  if (!(horizon_s > 0) || !(window_s > 0) || retry_cap < 0) throw ConfigError("horizon, window and retry cap must be positive");

  // overlay layer
  auto& o = plan.overlay;
  o.horizon_ms = seconds_to_ms(horizon_s);
  o.window_ms = seconds_to_ms(window_s);
  o.retry_cap = static_cast<unsigned>(retry_cap);
  const int nodes = get<int>(tree, "overlay.nodes", 16);
  const int bits = get<int>(tree, "overlay.bits", 32);
  const int succ = get<int>(tree, "overlay.successor_list", 4);
  if (nodes < 1 || bits < 1 || bits > 160 || succ < 1) throw ConfigError("invalid overlay size settings");
  o.nodes = static_cast<std::size_t>(nodes);
  o.overlay.bits = static_cast<unsigned>(bits);
  o.overlay.successor_list_length = static_cast<std::size_t>(succ);
  o.overlay.link_latency_ms = get<sim::TimeMs>(tree, "overlay.latency_ms", o.overlay.link_latency_ms);
  o.overlay.timeout_ms = get<sim::TimeMs>(tree, "overlay.timeout_ms", o.overlay.timeout_ms);
  o.overlay.service_ms = get<sim::TimeMs>(tree, "overlay.service_ms", o.overlay.service_ms);
  o.warmup_ms = seconds_to_ms(get<double>(tree, "overlay.warmup_s", 60.0));
  o.join_spacing_ms = get<sim::TimeMs>(tree, "overlay.join_spacing_ms", o.join_spacing_ms);
  if (o.overlay.link_latency_ms < 0 || o.overlay.timeout_ms <= 0 || o.overlay.service_ms < 0 || o.warmup_ms < 0 ||
      o.join_spacing_ms < 0) {
    throw ConfigError("invalid overlay timing settings");
  }
  plan.churn = parse_list(tree, "overlay.churn", plan.churn, scenario::parse_churn_kind);
  plan.workloads = parse_list(tree, "overlay.workload", plan.workloads, scenario::parse_workload_kind);
  o.workload.heavy_count = get<std::size_t>(tree, "overlay.heavy_lookups", o.workload.heavy_count);
  o.workload.light_count = get<std::size_t>(tree, "overlay.light_lookups", o.workload.light_count);
  o.workload.light_gap_ms = seconds_to_ms(get<double>(tree, "overlay.light_gap_s", 300.0));
  o.workload.bursts = get<std::size_t>(tree, "overlay.bursts", o.workload.bursts);
  o.workload.burst_size = get<std::size_t>(tree, "overlay.burst_size", o.workload.burst_size);
  o.workload.burst_gap_ms = seconds_to_ms(get<double>(tree, "overlay.burst_gap_s", 300.0));
  if (auto trace = tree.get_optional<std::string>("overlay.trace")) {
    std::filesystem::path p(*trace);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    o.workload.trace_path = p.string();
  }
  for (auto w : plan.workloads) {
    if (w == scenario::WorkloadKind::trace && o.workload.trace_path.empty()) {
      throw ConfigError("workload 'trace' needs overlay.trace");
    }
  }

  // custom policy parameters
  auto param = [&](const std::string& key, double fallback) {
    auto raw = tree.get_optional<std::string>(key);
    return raw ? parse_real(*raw, key) : fallback;
  };
  const manager::SubPolicyParams nemo{param("policy.nemo_t", 0), param("policy.nemo_k", manager::kInfinity),
                                      manager::Direction::increase};
  const manager::SubPolicyParams er{param("policy.er_t", 0), param("policy.er_k", manager::kInfinity),
                                    manager::Direction::decrease};
  const manager::SubPolicyParams lilt{param("policy.lilt_t", 0), param("policy.lilt_k", manager::kInfinity),
                                      manager::Direction::decrease};
  for (const auto* sp : {&nemo, &er, &lilt}) {
    if (!(sp->k > 0) || sp->t < 0) throw ConfigError("policy k must be positive and t non-negative");
  }
  plan.custom_policy = manager::make_policy_set(nemo, er, lilt);
  plan.custom_policy.id = manager::PolicySetId::custom;
  const auto min_interval = get<sim::TimeMs>(tree, "overlay.min_interval_ms", 100);
  if (min_interval <= 0) throw ConfigError("overlay.min_interval_ms must be positive");
  plan.custom_policy.min_interval = min_interval;
  o.policies.min_interval = min_interval;

  // DOC layer
  auto& d = plan.doc;
  d.horizon_s = horizon_s;
  d.window_ms = seconds_to_ms(window_s);
  d.retry_cap = static_cast<unsigned>(retry_cap);
  plan.networks = parse_list(tree, "doc.network", plan.networks, scenario::parse_network_kind);
  plan.doc_churn = parse_list(tree, "doc.churn", plan.doc_churn, parse_doc_churn);
  plan.doc_workloads = parse_list(tree, "doc.workload", plan.doc_workloads, parse_doc_workload);
  plan.sizes_kb = parse_list(tree, "doc.size_kb", plan.sizes_kb, [](const std::string& s) -> std::optional<double> {
    try {
      const double v = std::stod(s);
      return v > 0 ? std::optional<double>(v) : std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  });
  const int servers = get<int>(tree, "doc.servers", 4);
  if (servers < 1) throw ConfigError("doc.servers must be at least 1");
  d.servers = static_cast<std::size_t>(servers);
  d.noise = get<double>(tree, "doc.noise", d.noise);
  d.monitor_period_s = get<double>(tree, "doc.monitor_s", d.monitor_period_s);
  d.heavy_gets = get<std::size_t>(tree, "doc.heavy_gets", d.heavy_gets);
  d.churn_phase_s = get<double>(tree, "doc.churn_phase_s", d.churn_phase_s);
  const double eval_s = get<double>(tree, "doc.eval_s", 60.0);
  if (d.noise < 0 || d.noise >= 1 || !(d.monitor_period_s > 0) || !(eval_s > 0) || !(d.churn_phase_s > 0)) {
    throw ConfigError("invalid DOC settings");
  }
  d.policy.eval_interval_s = eval_s;

  if (plan.layer == Layer::overlay) {
    plan.policies = parse_list(tree, "experiment.policies", plan.policies, manager::parse_policy_set_id);
  } else {
    plan.doc_policies = parse_list(tree, "experiment.policies", plan.doc_policies,
                                   [](const std::string& s) -> std::optional<int> {
                                     std::string v = s.rfind("policy", 0) == 0 ? s.substr(6) : s;
                                     if (v.size() != 1 || v[0] < '0' || v[0] >= '0' + doc::kDocPolicyCount) {
                                       return std::nullopt;
                                     }
                                     return v[0] - '0';
                                   });
  }
  return plan;
}

ExperimentPlan load_plan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse_plan(in, path.parent_path());
}

}  // namespace amsim::experiment
