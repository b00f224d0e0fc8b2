#include "amsim/gamf/knowledge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace amsim::gamf {

namespace {

bool in_window(const Record& r, const KnowledgeFilter& f) {
  if (r.timestamp < f.from) return false;
  if (f.to && r.timestamp >= *f.to) return false;
  return true;
}

}  // namespace

const char* to_string(AdapterKind kind) {
  switch (kind) {
    case AdapterKind::event_generator: return "event_generator";
    case AdapterKind::metric_extractor: return "metric_extractor";
    case AdapterKind::policy_evaluator: return "policy_evaluator";
    case AdapterKind::effector: return "effector";
  }
  return "unknown";
}

std::uint64_t Knowledge::append(Record record) {
  std::lock_guard lock(mu_);
  record.seq = records_.size();
  auto& positions = by_type_[record.type];
  auto [sorted_it, inserted] = type_sorted_.try_emplace(record.type, true);
  if (!positions.empty() && records_[positions.back()].timestamp > record.timestamp) {
    sorted_it->second = false;
  }
  positions.push_back(records_.size());
  records_.push_back(std::move(record));
  return records_.back().seq;
}

std::vector<Record> Knowledge::select(const KnowledgeFilter& filter,
                                      const std::map<std::string, std::uint64_t>* cursors) const {
  if (filter.to && *filter.to < filter.from) {
    throw std::invalid_argument("KnowledgeFilter: window end precedes window start");
  }
  auto cursor_of = [&](const std::string& key) -> std::uint64_t {
    if (!cursors) return 0;
    auto it = cursors->find(key);
    return it == cursors->end() ? 0 : it->second;
  };

  std::vector<Record> out;
  if (filter.types) {
    for (const auto& type : *filter.types) {
      auto it = by_type_.find(type);
      if (it == by_type_.end()) continue;
      const auto& positions = it->second;
      const bool sorted = type_sorted_.at(type);
      auto begin = positions.begin();
      if (cursors) {
        begin = std::lower_bound(positions.begin(), positions.end(), cursor_of(type));
      } else if (sorted && filter.from > 0) {
        begin = std::lower_bound(positions.begin(), positions.end(), filter.from,
                                 [&](std::size_t pos, TimeMs t) { return records_[pos].timestamp < t; });
      }
      for (auto p = begin; p != positions.end(); ++p) {
        const Record& r = records_[*p];
        if (sorted && filter.to && r.timestamp >= *filter.to) break;
        if (in_window(r, filter)) out.push_back(r);
      }
    }
  } else {
    for (std::size_t i = cursor_of(""); i < records_.size(); ++i) {
      if (in_window(records_[i], filter)) out.push_back(records_[i]);
    }
  }
  std::sort(out.begin(), out.end(), [](const Record& a, const Record& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return a.seq < b.seq;
  });
  return out;
}

std::vector<Record> Knowledge::query(const KnowledgeFilter& filter, std::string_view caller) {
  std::lock_guard lock(mu_);
  if (!filter.consume_since_last) return select(filter, nullptr);
  if (caller.empty()) throw std::invalid_argument("Knowledge::query: consuming query needs a caller id");
  auto& cursors = cursors_[std::string(caller)];
  auto out = select(filter, &cursors);
  const std::uint64_t end = records_.size();
  if (filter.types) {
    for (const auto& type : *filter.types) cursors[type] = end;
  } else {
    cursors[""] = end;
  }
  return out;
}

std::vector<Record> Knowledge::peek(const KnowledgeFilter& filter) const {
  std::lock_guard lock(mu_);
  return select(filter, nullptr);
}

std::size_t Knowledge::size() const {
  std::lock_guard lock(mu_);
  return records_.size();
}

std::size_t Knowledge::count_of(std::string_view type) const {
  std::lock_guard lock(mu_);
  auto it = by_type_.find(std::string(type));
  return it == by_type_.end() ? 0 : it->second.size();
}

std::string url_encode(std::string_view s) {
  static constexpr char hex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    const bool unreserved = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                            c == '-' || c == '_' || c == '.' || c == '~';
    if (unreserved) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xF]);
    }
  }
  return out;
}

void Knowledge::dump(std::ostream& out) const {
  std::lock_guard lock(mu_);
  char buf[64];
  for (const auto& r : records_) {
    out << r.timestamp << ',' << (r.is_event() ? "event" : "metric") << ',' << url_encode(r.type) << ',';
    if (r.is_metric()) {
      std::snprintf(buf, sizeof buf, "%.17g", r.value);
      out << buf;
    }
    for (const auto& [k, v] : r.info) out << ',' << url_encode(k) << '=' << url_encode(v);
    out << '\n';
  }
}

}  // namespace amsim::gamf
