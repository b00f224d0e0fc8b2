#include "amsim/experiment/doc_experiment.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>

#include "amsim/doc/fetch_sim.hpp"
#include "amsim/doc/ranking.hpp"
#include "amsim/experiment/csv.hpp"
#include "amsim/gamf/framework.hpp"
#include "amsim/sim/rng.hpp"

namespace amsim::experiment {

const char* to_string(DocWorkloadKind kind) {
  switch (kind) {
    case DocWorkloadKind::heavy: return "heavy";
    case DocWorkloadKind::light: return "light";
    case DocWorkloadKind::variable: return "variable";
  }
  return "unknown";
}

std::optional<DocWorkloadKind> parse_doc_workload(std::string_view s) {
  for (auto k : {DocWorkloadKind::heavy, DocWorkloadKind::light, DocWorkloadKind::variable}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

const char* to_string(DocChurnKind kind) {
  switch (kind) {
    case DocChurnKind::none: return "none";
    case DocChurnKind::high: return "high";
    case DocChurnKind::temporally_varying: return "temporally_varying";
  }
  return "unknown";
}

std::optional<DocChurnKind> parse_doc_churn(std::string_view s) {
  for (auto k : {DocChurnKind::none, DocChurnKind::high, DocChurnKind::temporally_varying}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

namespace {

sim::TimeMs to_ms(double s) { return static_cast<sim::TimeMs>(std::llround(s * 1000.0)); }

constexpr const char* kClient = "client";
constexpr const char* kFetchStarted = "fetch_started";
constexpr const char* kFetchFailed = "fetch_failed";
constexpr const char* kMonitorSample = "monitor_sample";

double info_number(const gamf::Record& r, const char* key) {
  auto it = r.info.find(key);
  return it == r.info.end() ? 0.0 : std::strtod(it->second.c_str(), nullptr);
}

/// Store client: server ranking from monitoring data plus the GAMF-based DOC manager.
class Client {
 public:
  Client(sim::EventKernel<double>& kernel, const DocExperimentConfig& cfg, const scenario::LinkSpeedSchedule& links,
         doc::Availability available, DocRunResult& result)
      : kernel_(kernel),
        cfg_(cfg),
        links_(links),
        available_(std::move(available)),
        result_(result),
        noise_(sim::derive_seed(cfg.base_seed, {sim::hash_tag("noise"), cfg.repetition})),
        monitors_(cfg.servers),
        doc_(cfg.policy.initial_doc) {
    if (doc_ < 1 || doc_ > cfg.servers) throw std::invalid_argument("initial DOC out of range");
    result_.doc_trace.emplace_back(0.0, doc_);
    framework_.register_adapter(
        {kClient, gamf::AdapterKind::event_generator, "store", {kFetchStarted, kFetchFailed, kMonitorSample}, true});
    framework_.register_adapter({"effector.doc", gamf::AdapterKind::effector, "doc", {}, false});
    if (cfg.policy.mode == doc::DocMode::autonomic) {
      const auto period = to_ms(cfg.policy.eval_interval_s);
      framework_.register_adapter({"extract.doc", gamf::AdapterKind::metric_extractor, "doc", {}, false},
                                  [this](gamf::FiringContext& ctx) { extract(ctx); });
      framework_.add_trigger("extract.doc", gamf::Periodic{period});
      framework_.register_adapter({"policy.doc", gamf::AdapterKind::policy_evaluator, "doc", {}, false},
                                  [this](gamf::FiringContext& ctx) { evaluate(ctx); });
      framework_.add_trigger("policy.doc", gamf::Periodic{period});
    }
    for (std::size_t i = 0; i < cfg.servers; ++i) monitors_[i].server = i;
  }

  void start() {
    monitor();
    drive();
  }

  void get(std::function<void()> next) {
    doc::GetRequest req;
    req.size_bits = cfg_.size_bits;
    req.doc = doc_;
    req.ranking = doc::rank_servers(monitors_);
    const unsigned doc = doc_;
    doc::simulate_get(kernel_, req, links_, available_, [this, doc, next = std::move(next)](const doc::GetResult& r) {
      result_.gets.push_back({r.issued, doc, r.get_time, r.failed});
      for (const auto& f : r.fetches) {
        ++result_.fetches;
        record(kFetchStarted, f.start, {{"server", std::to_string(f.server)}});
        if (f.failed) {
          ++result_.failed_fetches;
          record(kFetchFailed, f.end, {{"server", std::to_string(f.server)}});
        }
      }
      bytes.push_back({to_ms(kernel_.now()), static_cast<std::uint64_t>(std::llround(r.bits / 8.0))});
      next();
    });
  }

  std::vector<analytics::ByteSample> bytes;

 private:
  void record(const char* type, double t, gamf::Info info) {
    framework_.record_event(kClient, gamf::Event{type, to_ms(t), std::move(info)});
  }

  double noisy(double v) { return v * (1.0 + cfg_.noise * noise_.uniform(-1.0, 1.0)); }

  void monitor() {
    const double now = kernel_.now();
    const double client_bw = noisy(links_.client(now).bandwidth_bps);
    for (std::size_t i = 0; i < cfg_.servers; ++i) {
      auto& m = monitors_[i];
      m.reachable = available_(i, now, now);
      const auto link = links_.server(i, now);
      m.latency_s = noisy(link.latency_s);
      m.bandwidth_bps = noisy(link.bandwidth_bps);
      record(kMonitorSample, now,
             {{"server", std::to_string(i)},
              {"reachable", m.reachable ? "1" : "0"},
              {"latency_s", format_double(m.latency_s)},
              {"bandwidth_bps", format_double(m.bandwidth_bps)},
              {"client_bandwidth_bps", format_double(client_bw)}});
    }
    kernel_.schedule_after(cfg_.monitor_period_s, [this] { monitor(); });
  }

  void drive() {
    auto due = framework_.next_due();
    if (!due) return;
    kernel_.schedule_at(std::max(static_cast<double>(*due) / 1000.0, kernel_.now()), [this] {
      framework_.advance(std::max(to_ms(kernel_.now()), framework_.clock()));
      drive();
    });
  }

  std::vector<gamf::Record> consume(gamf::FiringContext& ctx, const char* type) {
    auto f = gamf::KnowledgeFilter::of_type(type);
    f.consume_since_last = true;
    return ctx.framework.query(f, ctx.adapter_id);
  }

  void extract(gamf::FiringContext& ctx) {
    const auto started = consume(ctx, kFetchStarted);
    const auto failed = consume(ctx, kFetchFailed);
    const auto samples = consume(ctx, kMonitorSample);
    std::vector<double> edtts, client_bw, server_bw;
    for (const auto& s : samples) {
      if (info_number(s, "reachable") == 0) continue;
      const double bw = info_number(s, "bandwidth_bps");
      if (!(bw > 0)) continue;
      edtts.push_back(doc::edtt(info_number(s, "latency_s"), doc::kReferenceSizeBits, bw));
      server_bw.push_back(bw);
      client_bw.push_back(info_number(s, "client_bandwidth_bps"));
    }
    const auto m = doc::extract_doc_metrics(started.size(), std::min(failed.size(), started.size()), edtts,
                                            client_bw, server_bw, doc_);
    ctx.framework.record_metric(ctx.adapter_id, {"ffr", ctx.now, m.ffr, {}});
    ctx.framework.record_metric(ctx.adapter_id, {"ftv", ctx.now, m.ftv, {}});
    ctx.framework.record_metric(ctx.adapter_id, {"bn", ctx.now, m.bn, {}});
  }

  void evaluate(gamf::FiringContext& ctx) {
    auto latest = [&](const char* type, double fallback) {
      const auto r = consume(ctx, type);
      return r.empty() ? fallback : r.back().value;
    };
    doc::DocMetrics m;
    m.ffr = latest("ffr", 0.0);
    m.ftv = latest("ftv", 0.0);
    m.bn = latest("bn", 1.0);
    m.current_doc = doc_;
    ++result_.evaluations;
    const unsigned next = doc::doc_policy_step(m, cfg_.policy);
    doc_ = next;  // effector
    result_.doc_trace.emplace_back(kernel_.now(), doc_);
  }

  sim::EventKernel<double>& kernel_;
  const DocExperimentConfig& cfg_;
  const scenario::LinkSpeedSchedule& links_;
  doc::Availability available_;
  DocRunResult& result_;
  sim::Rng noise_;
  gamf::Framework framework_;
  std::vector<doc::ServerMonitor> monitors_;
  unsigned doc_;
};

scenario::ChurnPattern doc_churn_pattern(const DocExperimentConfig& cfg, std::uint64_t seed) {
  scenario::ChurnPattern p = scenario::doc_high_churn(seed);
  switch (cfg.churn) {
    case DocChurnKind::none: p.kind = scenario::ChurnKind::none; break;
    case DocChurnKind::high: break;
    case DocChurnKind::temporally_varying:
      p.kind = scenario::ChurnKind::temporally_varying;
      p.low_on = {8 * 3600 * 1000LL, 3600 * 1000LL};
      p.phase_ms = to_ms(cfg.churn_phase_s);
      break;
  }
  return p;
}

}  // namespace

DocRunResult run_doc_experiment(const DocExperimentConfig& cfg) {
  if (cfg.servers == 0) throw std::invalid_argument("need at least one server");
  if (cfg.policy.max_doc != cfg.servers) {
    auto fixed = cfg;
    fixed.policy.max_doc = static_cast<unsigned>(cfg.servers);
    return run_doc_experiment(fixed);
  }
  DocRunResult result;
  sim::EventKernel<double> kernel(0.0);
  const scenario::LinkSpeedSchedule links(cfg.network, cfg.servers,
                                          sim::derive_seed(cfg.base_seed, {sim::hash_tag("links")}));
  const auto schedule = scenario::build_churn_schedule(
      doc_churn_pattern(cfg, sim::derive_seed(cfg.base_seed, {sim::hash_tag("doc_churn")})), cfg.servers,
      to_ms(cfg.horizon_s));
  doc::Availability available = [&schedule](std::size_t server, double from, double to) {
    for (const auto& d : schedule[server]) {
      const double down = static_cast<double>(d.down_at) / 1000.0;
      const double up = static_cast<double>(d.up_at) / 1000.0;
      if (down <= to && up > from) return false;
    }
    return true;
  };

  Client client(kernel, cfg, links, available, result);
  client.start();

  // workload
  std::size_t total = 0;
  switch (cfg.workload) {
    case DocWorkloadKind::heavy: total = cfg.heavy_gets; break;
    case DocWorkloadKind::light: total = cfg.light_gets; break;
    case DocWorkloadKind::variable: total = cfg.variable_gets; break;
  }
  if (total == 0) throw std::invalid_argument("DOC workload needs gets");
  std::size_t done = 0;
  auto finished_one = [&] {
    if (++done == total) {
      result.workload_complete = true;
      kernel.stop();
    }
  };
  std::function<void(std::size_t)> sequential = [&](std::size_t i) {
    if (i == total) return;
    client.get([&, i] {
      finished_one();
      if (cfg.workload == DocWorkloadKind::variable && (i + 1) % cfg.variable_group == 0) {
        kernel.schedule_after(cfg.variable_gap_s, [&, i] { sequential(i + 1); });
      } else {
        sequential(i + 1);
      }
    });
  };
  if (cfg.workload == DocWorkloadKind::light) {
    for (std::size_t i = 0; i < total; ++i) {
      kernel.schedule_at(static_cast<double>(i) * cfg.light_gap_s, [&] { client.get(finished_one); });
    }
  } else {
    if (cfg.workload == DocWorkloadKind::variable && cfg.variable_group == 0) {
      throw std::invalid_argument("variable group size must be positive");
    }
    kernel.schedule_at(0.0, [&] { sequential(0); });
  }

  kernel.run_until(cfg.horizon_s);
  result.end_time = kernel.now();

  std::vector<analytics::LookupRecord> records;
  for (const auto& g : result.gets) records.push_back({to_ms(g.issued), g.failed, std::max<sim::TimeMs>(to_ms(g.get_time), 1)});
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.issued_at < b.issued_at; });
  result.windows = analytics::window_aggregate(records, client.bytes, cfg.window_ms, cfg.retry_cap);
  for (const auto& r : records) {
    if (!r.failed) {
      result.holistic_egt_ms = analytics::holistic_elt(records, cfg.retry_cap);
      break;
    }
  }
  return result;
}

std::string gets_csv(const std::vector<GetSample>& gets) {
  std::string out = "issued_ms,doc,get_time_ms,failed\n";
  for (const auto& g : gets) {
    out += format_double(g.issued * 1000.0) + ',' + std::to_string(g.doc) + ',' + format_double(g.get_time * 1000.0) +
           ',' + (g.failed ? "1" : "0") + '\n';
  }
  return out;
}

std::string doc_trace_csv(const std::vector<std::pair<double, unsigned>>& trace) {
  std::string out = "time_ms,doc\n";
  for (const auto& [t, d] : trace) out += format_double(t * 1000.0) + ',' + std::to_string(d) + '\n';
  return out;
}

}  // namespace amsim::experiment
