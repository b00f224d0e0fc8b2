#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "amsim/scenario/workload.hpp"

namespace amsim::scenario {

/// File-system style trace record: `offset_ms,kind,path_depth,file_id`.
struct TraceRecord {
  enum class Kind { meta, data };
  TimeMs offset_ms = 0;
  Kind kind = Kind::meta;
  unsigned path_depth = 0;
  std::string file_id;
};

class TraceError : public std::runtime_error {
 public:
  TraceError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline constexpr unsigned kReplicationFactor = 4;

/// Blank lines and lines starting with '#' are skipped. Offsets must not decrease.
std::vector<TraceRecord> parse_trace(std::istream& in);
std::vector<TraceRecord> parse_trace_file(const std::string& path);

/// The key of replica r is base + r * 2^bits / R, so replicas are spread evenly.
std::vector<RingKey> replica_keys(const RingKey& base, unsigned replicas = kReplicationFactor);

/// Expands records into batches: per path level one parallel batch of replica
/// keys (levels looked up one after another), then for data records one
/// sequential batch over the data replicas.
std::vector<LookupBatch> expand_trace(const std::vector<TraceRecord>& records, unsigned bits);

struct TraceGenParams {
  std::size_t records = 200;
  TimeMs mean_gap_ms = 10'000;
  unsigned max_depth = 5;
  double data_fraction = 0.5;
  std::size_t files = 50;
  std::uint64_t seed = 1;
};

/// Synthetic stand-in for a file-system trace.
std::vector<TraceRecord> generate_trace(const TraceGenParams& params);
void write_trace(std::ostream& out, const std::vector<TraceRecord>& records);

}  // namespace amsim::scenario
