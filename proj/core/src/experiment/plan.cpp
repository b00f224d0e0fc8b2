#include "amsim/experiment/plan.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "amsim/experiment/csv.hpp"

namespace amsim::experiment {

namespace fs = std::filesystem;

std::string CellSpec::stem() const { return group + "__" + policy + "__rep" + std::to_string(repetition); }

namespace {

std::string size_label(double kb) {
  const double r = std::round(kb);
  return r == kb ? std::to_string(static_cast<long long>(r)) : format_double(kb);
}

fs::path with_suffix(const fs::path& stem, const char* suffix) {
  fs::path p = stem;
  p += suffix;
  return p;
}

}  // namespace

std::vector<CellSpec> plan_cells(const ExperimentPlan& plan, const RunOptions& options) {
  std::vector<CellSpec> cells;
  if (plan.layer == Layer::overlay) {
    for (auto churn : plan.churn) {
      for (auto workload : plan.workloads) {
        const std::string group =
            std::string("overlay-") + scenario::to_string(churn) + "-" + scenario::to_string(workload);
        for (auto policy : plan.policies) {
          for (unsigned rep = 0; rep < plan.repetitions; ++rep) {
            OverlayExperimentConfig cfg = plan.overlay;
            cfg.churn.kind = churn;
            cfg.workload.kind = workload;
            const auto min_interval = cfg.policies.min_interval;
            cfg.policies = policy == manager::PolicySetId::custom ? plan.custom_policy : manager::make_policy_set(policy);
            cfg.policies.min_interval = min_interval;
            cfg.base_seed = plan.seed;
            cfg.repetition = rep;
            cfg.dump_knowledge = options.dump_knowledge;
            CellSpec cell{group, manager::to_string(policy), rep, {}};
            cell.run = [cfg](const fs::path& stem) {
              const auto r = run_overlay_experiment(cfg);
              write_file_atomic(with_suffix(stem, ".intervals.csv"), intervals_csv(r.intervals));
              write_file_atomic(with_suffix(stem, ".topology.csv"), r.topology_csv);
              if (cfg.dump_knowledge) write_file_atomic(with_suffix(stem, ".knowledge.txt"), r.knowledge_dump);
              write_file_atomic(with_suffix(stem, ".ulm.csv"), ulm_csv(r.windows));
            };
            cells.push_back(std::move(cell));
          }
        }
      }
    }
    return cells;
  }
  for (auto network : plan.networks) {
    for (auto churn : plan.doc_churn) {
      for (auto workload : plan.doc_workloads) {
        for (double kb : plan.sizes_kb) {
          const std::string group = std::string("doc-") + scenario::to_string(network) + "-" + to_string(churn) + "-" +
                                    to_string(workload) + "-" + size_label(kb) + "kb";
          for (int policy : plan.doc_policies) {
            for (unsigned rep = 0; rep < plan.repetitions; ++rep) {
              DocExperimentConfig cfg = plan.doc;
              cfg.network = network;
              cfg.churn = churn;
              cfg.workload = workload;
              cfg.size_bits = kb * doc::kKByteBits;
              const double eval = cfg.policy.eval_interval_s;
              cfg.policy = doc::doc_policy(policy);
              cfg.policy.eval_interval_s = eval;
              cfg.base_seed = plan.seed;
              cfg.repetition = rep;
              CellSpec cell{group, "policy" + std::to_string(policy), rep, {}};
              cell.run = [cfg](const fs::path& stem) {
                const auto r = run_doc_experiment(cfg);
                write_file_atomic(with_suffix(stem, ".gets.csv"), gets_csv(r.gets));
                write_file_atomic(with_suffix(stem, ".doc.csv"), doc_trace_csv(r.doc_trace));
                write_file_atomic(with_suffix(stem, ".ulm.csv"), ulm_csv(r.windows));
              };
              cells.push_back(std::move(cell));
            }
          }
        }
      }
    }
  }
  return cells;
}

RunReport run_plan(const ExperimentPlan& plan, const fs::path& out_dir, const RunOptions& options) {
  fs::create_directories(out_dir);
  const auto cells = plan_cells(plan, options);
  RunReport report;
  report.cells = cells.size();
  std::vector<const CellSpec*> todo;
  for (const auto& c : cells) {
    if (fs::exists(out_dir / (c.stem() + ".ulm.csv"))) {
      ++report.skipped;
    } else {
      todo.push_back(&c);
    }
  }
  std::mutex log_mu;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= todo.size()) return;
      const auto& cell = *todo[i];
      try {
        cell.run(out_dir / cell.stem());
      } catch (...) {
        std::lock_guard lock(log_mu);
        if (!failure) failure = std::current_exception();
        next = todo.size();
        return;
      }
      std::lock_guard lock(log_mu);
      ++report.ran;
      if (options.log) *options.log << "done " << cell.stem() << '\n';
    }
  };
  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  summarize_dir(out_dir, true);
  return report;
}

namespace {

struct RunData {
  std::vector<std::optional<double>> elt;
  std::vector<double> nu;
  std::vector<double> ler;
};

double parse_double(const std::string& s, const fs::path& file) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("bad number '" + s + "' in " + file.string());
  }
}

RunData read_ulm(const fs::path& file) {
  const auto rows = read_csv(file);
  if (rows.empty() || rows[0].size() != 4 || rows[0][0] != "window_start_ms") {
    throw std::runtime_error("not a ULM file: " + file.string());
  }
  RunData d;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 4) throw std::runtime_error("bad row in " + file.string());
    d.elt.push_back(r[1].empty() ? std::nullopt : std::optional<double>(parse_double(r[1], file)));
    d.nu.push_back(parse_double(r[2], file));
    d.ler.push_back(parse_double(r[3], file));
  }
  return d;
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

void append_distribution(std::string& out, const SummaryRow& row, const char* metric,
                         const analytics::DistributionSummary& d) {
  out += row.group + ',' + row.policy + ',' + metric + ',' + std::to_string(d.n) + ',' + format_double(d.mean) + ',' +
         format_double(d.ci90) + ',' + format_double(d.s) + ',' + format_double(d.min) + ',' + format_double(d.q1) +
         ',' + format_double(d.q2) + ',' + format_double(d.q3) + ',' + format_double(d.max) + '\n';
}

}  // namespace

std::vector<SummaryRow> summarize_dir(const fs::path& dir, bool write) {
  if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir.string());
  // group -> policy -> runs (ordered by file name, hence by repetition)
  std::map<std::string, std::map<std::string, std::map<std::string, RunData>>> data;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    const std::string suffix = ".ulm.csv";
    if (name.size() <= suffix.size() || name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) continue;
    const std::string stem = name.substr(0, name.size() - suffix.size());
    const auto a = stem.find("__");
    const auto b = stem.rfind("__");
    if (a == std::string::npos || a == b) continue;
    data[stem.substr(0, a)][stem.substr(a + 2, b - a - 2)][stem.substr(b + 2)] = read_ulm(entry.path());
  }
  if (data.empty()) throw std::runtime_error("no results in " + dir.string());

  std::vector<SummaryRow> rows;
  for (const auto& [group, policies] : data) {
    auto base = policies.find("policy0");
    if (base == policies.end()) throw std::runtime_error("group " + group + " has no policy0 baseline");
    auto pooled = [](const std::map<std::string, RunData>& runs) {
      std::vector<double> elt, nu, ler;
      for (const auto& [rep, d] : runs) {
        for (const auto& e : d.elt) {
          if (e) elt.push_back(*e);
        }
        nu.insert(nu.end(), d.nu.begin(), d.nu.end());
        ler.insert(ler.end(), d.ler.begin(), d.ler.end());
      }
      return std::make_tuple(elt, nu, ler);
    };
    const auto [base_elt, base_nu, base_ler] = pooled(base->second);
    for (const auto& [policy, runs] : policies) {
      const auto [elt, nu, ler] = pooled(runs);
      SummaryRow row;
      row.group = group;
      row.policy = policy;
      row.runs = runs.size();
      if (nu.empty()) throw std::runtime_error("no windows for " + group + "/" + policy);
      row.nu = analytics::summarize(nu);
      row.nu_mean = row.nu.mean;
      row.ler_mean = analytics::mean(ler);
      row.nu_norm = analytics::normalize(nu, base_nu);
      if (!elt.empty()) {
        row.elt = analytics::summarize(elt);
        row.elt_mean = row.elt->mean;
        row.elt_norm = base_elt.empty() ? std::nan("") : analytics::normalize(elt, base_elt);
      } else {
        row.elt_mean = std::nan("");
        row.elt_norm = std::nan("");
      }
      if (runs.size() >= 2) {
        std::vector<std::vector<std::optional<double>>> series;
        for (const auto& [rep, d] : runs) series.push_back(d.elt);
        try {
          row.nsd_elt = analytics::nsd(series);
        } catch (const std::invalid_argument&) {
        }
      }
      rows.push_back(std::move(row));
    }
  }

  if (write) {
    std::string summary = "group,policy,runs,elt_mean_ms,nu_mean_bytes,ler_mean,elt_norm,nu_norm,nsd_elt\n";
    std::string dist = "group,policy,metric,n,mean,ci_mu,s,min,Q1,Q2,Q3,max\n";
    for (const auto& r : rows) {
      summary += r.group + ',' + r.policy + ',' + std::to_string(r.runs) + ',' + format_double(r.elt_mean) + ',' +
                 format_double(r.nu_mean) + ',' + format_double(r.ler_mean) + ',' + format_double(r.elt_norm) + ',' +
                 format_double(r.nu_norm) + ',' + opt(r.nsd_elt) + '\n';
      if (r.elt) append_distribution(dist, r, "elt_ms", *r.elt);
      append_distribution(dist, r, "nu_bytes", r.nu);
    }
    write_file_atomic(dir / "summary.csv", summary);
    write_file_atomic(dir / "distributions.csv", dist);
  }
  return rows;
}

}  // namespace amsim::experiment
