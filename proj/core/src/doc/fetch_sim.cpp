#include "amsim/doc/fetch_sim.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace amsim::doc {

namespace {

struct GetState {
  GetRequest request;
  const scenario::LinkSpeedSchedule* links = nullptr;
  Availability available;
  std::function<void(const GetResult&)> done;
  GetResult result;
  std::size_t next = 0;  // next untried position in the ranking
  std::size_t outstanding = 0;
  std::vector<std::pair<std::size_t, sim::EventKernel<double>::Handle>> pending;  // (fetch index, event)
  bool finished = false;
};

void launch_round(sim::EventKernel<double>& kernel, const std::shared_ptr<GetState>& st);

void finish(sim::EventKernel<double>& kernel, const std::shared_ptr<GetState>& st, bool failed) {
  st->finished = true;
  const double now = kernel.now();
  for (auto& [idx, handle] : st->pending) {
    if (!kernel.cancel(handle)) continue;
    auto& f = st->result.fetches[idx];
    f.cancelled = true;
    const double full = f.end - f.start;
    const double share = full > 0 ? std::clamp((now - f.start) / full, 0.0, 1.0) : 1.0;
    st->result.bits += share * st->request.size_bits;
    f.end = now;
  }
  st->pending.clear();
  st->result.failed = failed;
  st->result.get_time = now - st->result.issued;
  if (st->done) st->done(st->result);
}

void launch_round(sim::EventKernel<double>& kernel, const std::shared_ptr<GetState>& st) {
  const auto& ranking = st->request.ranking;
  if (st->next >= ranking.size()) {
    finish(kernel, st, true);
    return;
  }
  const std::size_t count = std::min<std::size_t>(st->request.doc, ranking.size() - st->next);
  const double now = kernel.now();
  const auto client = st->links->client(now);
  st->outstanding = count;
  st->pending.clear();
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t server = ranking[st->next++];
    const auto link = st->links->server(server, now);
    const double duration = 2 * client.latency_s + 2 * link.latency_s +
                            st->request.size_bits * (1.0 / link.bandwidth_bps + static_cast<double>(count) / client.bandwidth_bps);
    const double end = now + duration;
    const bool ok = st->available(server, now, end);
    const std::size_t idx = st->result.fetches.size();
    st->result.fetches.push_back(FetchRecord{server, now, end, !ok, false});
    auto handle = kernel.schedule_at(end, [&kernel, st, idx, ok] {
      if (st->finished) return;
      auto& pending = st->pending;
      pending.erase(std::remove_if(pending.begin(), pending.end(), [idx](const auto& p) { return p.first == idx; }),
                    pending.end());
      st->result.bits += st->request.size_bits;
      if (ok) {
        finish(kernel, st, false);
        return;
      }
      if (--st->outstanding == 0) launch_round(kernel, st);
    });
    st->pending.emplace_back(idx, handle);
  }
}

}  // namespace

void simulate_get(sim::EventKernel<double>& kernel, const GetRequest& request, const scenario::LinkSpeedSchedule& links,
                  const Availability& available, std::function<void(const GetResult&)> done) {
  if (request.doc < 1) throw std::invalid_argument("doc must be at least 1");
  if (!(request.size_bits > 0)) throw std::invalid_argument("size must be positive");
  auto st = std::make_shared<GetState>();
  st->request = request;
  st->links = &links;
  st->available = available ? available : Availability([](std::size_t, double, double) { return true; });
  st->done = std::move(done);
  st->result.issued = kernel.now();
  launch_round(kernel, st);
}

GetResult simulate_get(const GetRequest& request, const scenario::LinkSpeedSchedule& links,
                       const Availability& available, double start) {
  sim::EventKernel<double> kernel(start);
  std::optional<GetResult> out;
  simulate_get(kernel, request, links, available, [&out](const GetResult& r) { out = r; });
  kernel.run();
  return *out;
}

}  // namespace amsim::doc
