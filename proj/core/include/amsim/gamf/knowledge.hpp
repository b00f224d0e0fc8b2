#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "amsim/gamf/types.hpp"

namespace amsim::gamf {

/// Append-only shared knowledge base. Every public member is linearizable.
class Knowledge {
 public:
  Knowledge() = default;
  Knowledge(const Knowledge&) = delete;
  Knowledge& operator=(const Knowledge&) = delete;

  /// Stores the record and returns its insertion index.
  std::uint64_t append(Record record);

  /// Records matching the filter, ordered by timestamp then insertion order.
  /// A consuming filter requires a non-empty caller id.
  std::vector<Record> query(const KnowledgeFilter& filter, std::string_view caller = {});

  /// Non-consuming variant usable through a const reference.
  std::vector<Record> peek(const KnowledgeFilter& filter) const;

  std::size_t size() const;
  std::size_t count_of(std::string_view type) const;

  /// Writes `timestamp,kind,type,value,key=value...` lines, URL-encoded.
  void dump(std::ostream& out) const;

 private:
  std::vector<Record> select(const KnowledgeFilter& filter,
                             const std::map<std::string, std::uint64_t>* cursors) const;

  mutable std::mutex mu_;
  std::vector<Record> records_;
  // positions into records_ per type, in insertion order
  std::unordered_map<std::string, std::vector<std::size_t>> by_type_;
  // per type: whether timestamps were appended in non-decreasing order
  std::unordered_map<std::string, bool> type_sorted_;
  // caller -> (type or "" for untyped) -> first unseen insertion index
  std::unordered_map<std::string, std::map<std::string, std::uint64_t>> cursors_;
};

std::string url_encode(std::string_view s);

}  // namespace amsim::gamf
