#include "amsim/gamf/framework.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace amsim::gamf {

void Framework::register_adapter(AdapterDescriptor descriptor, Action action) {
  std::lock_guard lock(mu_);
  if (descriptor.adapter_id.empty()) throw RegistryError("adapter id must not be empty");
  if (adapters_.count(descriptor.adapter_id)) {
    throw RegistryError("adapter '" + descriptor.adapter_id + "' is already registered");
  }
  if (!descriptor.claimed_event_types.empty() && descriptor.kind != AdapterKind::event_generator) {
    throw RegistryError("only event generators may claim event types");
  }
  for (const auto& type : descriptor.claimed_event_types) {
    if (auto it = claims_.find(type); it != claims_.end()) {
      throw ClaimError("event type '" + type + "' is already claimed by '" + it->second + "'");
    }
  }
  for (const auto& type : descriptor.claimed_event_types) claims_.emplace(type, descriptor.adapter_id);
  const std::string id = descriptor.adapter_id;
  adapters_.emplace(id, Adapter{std::move(descriptor), std::move(action), next_order_++});
}

void Framework::unregister(std::string_view adapter_id) {
  std::lock_guard lock(mu_);
  auto it = adapters_.find(adapter_id);
  if (it == adapters_.end()) throw RegistryError("unknown adapter '" + std::string(adapter_id) + "'");
  if (it->second.descriptor.is_protected) {
    throw ProtectionError("adapter '" + std::string(adapter_id) + "' is protected");
  }
  for (const auto& type : it->second.descriptor.claimed_event_types) claims_.erase(type);
  std::erase_if(triggers_, [&](const Trigger& t) { return t.adapter_id == adapter_id; });
  adapters_.erase(it);
}

bool Framework::contains(std::string_view adapter_id) const {
  std::lock_guard lock(mu_);
  return adapters_.find(adapter_id) != adapters_.end();
}

std::size_t Framework::adapter_count() const {
  std::lock_guard lock(mu_);
  return adapters_.size();
}

std::vector<std::string> Framework::facet(std::string_view facet) const {
  std::lock_guard lock(mu_);
  std::vector<const Adapter*> matching;
  for (const auto& [id, a] : adapters_) {
    if (a.descriptor.facet == facet) matching.push_back(&a);
  }
  std::sort(matching.begin(), matching.end(), [](auto* a, auto* b) { return a->order < b->order; });
  std::vector<std::string> ids;
  for (auto* a : matching) ids.push_back(a->descriptor.adapter_id);
  return ids;
}

std::optional<AdapterDescriptor> Framework::descriptor(std::string_view adapter_id) const {
  std::lock_guard lock(mu_);
  auto it = adapters_.find(adapter_id);
  if (it == adapters_.end()) return std::nullopt;
  return it->second.descriptor;
}

void Framework::add_trigger(std::string_view adapter_id, TriggerSpec spec) {
  std::lock_guard lock(mu_);
  if (adapters_.find(adapter_id) == adapters_.end()) {
    throw RegistryError("unknown adapter '" + std::string(adapter_id) + "'");
  }
  Trigger t{std::string(adapter_id), std::move(spec), 0, next_order_++};
  if (auto* p = std::get_if<Periodic>(&t.spec)) {
    if (p->interval <= 0) throw std::invalid_argument("periodic trigger interval must be positive");
    t.next_due = clock_ + p->interval;
  } else if (auto* c = std::get_if<Custom>(&t.spec); c && !c->predicate) {
    throw std::invalid_argument("custom trigger needs a predicate");
  }
  triggers_.push_back(std::move(t));
}

void Framework::collect_custom(TimeMs now, const Record* latest, std::vector<Pending>& out) {
  std::vector<const Trigger*> custom;
  for (const auto& t : triggers_) {
    if (std::holds_alternative<Custom>(t.spec)) custom.push_back(&t);
  }
  std::stable_sort(custom.begin(), custom.end(),
                   [](auto* a, auto* b) { return a->adapter_id < b->adapter_id; });
  for (auto* t : custom) {
    if (std::get<Custom>(t->spec).predicate(now, knowledge_, latest)) {
      out.push_back(Pending{t->adapter_id, now, Firing::Cause::custom});
    }
  }
}

void Framework::fire(const std::vector<Pending>& pending, const Record* cause, std::vector<std::string>& fired) {
  for (const auto& p : pending) {
    Action action;
    {
      std::lock_guard lock(mu_);
      auto it = adapters_.find(p.adapter_id);
      if (it == adapters_.end()) continue;  // removed by an earlier action
      action = it->second.action;
      log_.push_back(Firing{p.time, p.adapter_id, p.cause});
    }
    fired.push_back(p.adapter_id);
    if (action) {
      FiringContext ctx{*this, p.adapter_id, p.time, cause};
      action(ctx);
    }
  }
}

std::vector<std::string> Framework::record_event(std::string_view generator_id, Event event) {
  std::vector<Pending> pending;
  Record stored;
  {
    std::lock_guard lock(mu_);
    auto it = adapters_.find(generator_id);
    if (it == adapters_.end()) throw RegistryError("unknown generator '" + std::string(generator_id) + "'");
    if (it->second.descriptor.kind != AdapterKind::event_generator) {
      throw RegistryError("adapter '" + std::string(generator_id) + "' is not an event generator");
    }
    if (event.event_type.empty()) throw std::invalid_argument("event type must not be empty");
    if (event.timestamp < 0) throw std::invalid_argument("event timestamp must be non-negative");
    if (auto c = claims_.find(event.event_type); c != claims_.end() && c->second != generator_id) {
      throw ClaimError("event type '" + event.event_type + "' is claimed by '" + c->second + "'");
    }
    stored.kind = RecordKind::event;
    stored.type = std::move(event.event_type);
    stored.timestamp = event.timestamp;
    stored.info = std::move(event.payload);
    stored.seq = knowledge_.append(stored);

    std::vector<const Trigger*> on_event;
    for (const auto& t : triggers_) {
      if (auto* oe = std::get_if<OnEvent>(&t.spec); oe && oe->event_type == stored.type) on_event.push_back(&t);
    }
    std::stable_sort(on_event.begin(), on_event.end(), [&](auto* a, auto* b) {
      return adapters_.find(a->adapter_id)->second.order < adapters_.find(b->adapter_id)->second.order;
    });
    for (auto* t : on_event) pending.push_back(Pending{t->adapter_id, stored.timestamp, Firing::Cause::on_event});
    collect_custom(stored.timestamp, &stored, pending);
  }
  std::vector<std::string> fired;
  fire(pending, &stored, fired);
  return fired;
}

void Framework::record_metric(std::string_view extractor_id, MetricValue metric) {
  std::lock_guard lock(mu_);
  auto it = adapters_.find(extractor_id);
  if (it == adapters_.end()) throw RegistryError("unknown extractor '" + std::string(extractor_id) + "'");
  if (metric.metric_type.empty()) throw std::invalid_argument("metric type must not be empty");
  if (!std::isfinite(metric.value)) throw std::invalid_argument("metric value must be finite");
  Record r;
  r.kind = RecordKind::metric;
  r.type = std::move(metric.metric_type);
  r.timestamp = metric.timestamp;
  r.value = metric.value;
  r.info = std::move(metric.info);
  knowledge_.append(std::move(r));
}

std::vector<std::string> Framework::advance(TimeMs now) {
  std::vector<std::string> fired;
  {
    std::lock_guard lock(mu_);
    if (now < clock_) {
      throw TimeRegressionError("advance(" + std::to_string(now) + ") precedes framework clock " +
                                std::to_string(clock_));
    }
  }
  for (;;) {
    Pending next;
    {
      std::lock_guard lock(mu_);
      Trigger* best = nullptr;
      for (auto& t : triggers_) {
        if (!std::holds_alternative<Periodic>(t.spec) || t.next_due > now) continue;
        if (!best || t.next_due < best->next_due ||
            (t.next_due == best->next_due && t.adapter_id < best->adapter_id)) {
          best = &t;
        }
      }
      if (!best) break;
      next = Pending{best->adapter_id, best->next_due, Firing::Cause::periodic};
      clock_ = std::max(clock_, best->next_due);
      best->next_due += std::get<Periodic>(best->spec).interval;
    }
    fire({next}, nullptr, fired);
  }
  std::vector<Pending> custom;
  {
    std::lock_guard lock(mu_);
    clock_ = now;
    collect_custom(now, nullptr, custom);
  }
  fire(custom, nullptr, fired);
  return fired;
}

TimeMs Framework::clock() const {
  std::lock_guard lock(mu_);
  return clock_;
}

std::optional<TimeMs> Framework::next_due() const {
  std::lock_guard lock(mu_);
  std::optional<TimeMs> due;
  for (const auto& t : triggers_) {
    if (!std::holds_alternative<Periodic>(t.spec)) continue;
    if (!due || t.next_due < *due) due = t.next_due;
  }
  return due;
}

std::vector<Firing> Framework::firing_log() const {
  std::lock_guard lock(mu_);
  return log_;
}

}  // namespace amsim::gamf
