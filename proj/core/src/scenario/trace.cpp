#include "amsim/scenario/trace.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "amsim/sim/rng.hpp"

namespace amsim::scenario {

TraceError::TraceError(std::size_t line, const std::string& what)
    : std::runtime_error("trace line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
bool parse_number(const std::string& s, T& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

RingKey key_for(const std::string& file_id, std::string_view role, unsigned level, unsigned bits) {
  sim::Rng rng(sim::derive_seed(sim::hash_tag(file_id), {sim::hash_tag(role), level}));
  return RingKey::random(rng, bits);
}

}  // namespace

std::vector<TraceRecord> parse_trace(std::istream& in) {
  std::vector<TraceRecord> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (fields.size() != 4) throw TraceError(number, "expected 4 fields, got " + std::to_string(fields.size()));
    TraceRecord r;
    if (!parse_number(fields[0], r.offset_ms) || r.offset_ms < 0) {
      throw TraceError(number, "bad offset '" + fields[0] + "'");
    }
    if (fields[1] == "meta") {
      r.kind = TraceRecord::Kind::meta;
    } else if (fields[1] == "data") {
      r.kind = TraceRecord::Kind::data;
    } else {
      throw TraceError(number, "kind must be meta or data, got '" + fields[1] + "'");
    }
    if (!parse_number(fields[2], r.path_depth)) throw TraceError(number, "bad path depth '" + fields[2] + "'");
    if (r.kind == TraceRecord::Kind::meta && r.path_depth == 0) {
      throw TraceError(number, "meta record needs a path depth of at least 1");
    }
    if (fields[3].empty()) throw TraceError(number, "empty file id");
    r.file_id = fields[3];
    if (!out.empty() && r.offset_ms < out.back().offset_ms) throw TraceError(number, "offsets out of order");
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TraceRecord> parse_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file '" + path + "'");
  return parse_trace(in);
}

std::vector<RingKey> replica_keys(const RingKey& base, unsigned replicas) {
  std::vector<RingKey> out;
  const unsigned bits = base.bits();
  // 2^bits / replicas for a power-of-two replica count
  unsigned shift = 0;
  while ((1u << shift) < replicas) ++shift;
  if ((1u << shift) != replicas || shift > bits) throw std::invalid_argument("replica count must be a power of two");
  const RingKey step = shift == bits ? RingKey(1, bits) : RingKey::pow2(bits - shift, bits);
  RingKey k = base;
  for (unsigned r = 0; r < replicas; ++r) {
    out.push_back(k);
    k = k + step;
  }
  return out;
}

std::vector<LookupBatch> expand_trace(const std::vector<TraceRecord>& records, unsigned bits) {
  std::vector<LookupBatch> out;
  for (const auto& r : records) {
    bool first = true;
    auto push = [&](std::vector<RingKey> keys, BatchMode mode) {
      out.push_back(LookupBatch{first ? Anchor::absolute : Anchor::after_previous, first ? r.offset_ms : 0,
                                std::move(keys), mode});
      first = false;
    };
    for (unsigned level = 0; level < r.path_depth; ++level) {
      push(replica_keys(key_for(r.file_id, "meta", level, bits)), BatchMode::parallel);
    }
    if (r.kind == TraceRecord::Kind::data) {
      push(replica_keys(key_for(r.file_id, "data", 0, bits)), BatchMode::sequential);
    }
  }
  return out;
}

std::vector<TraceRecord> generate_trace(const TraceGenParams& p) {
  if (p.max_depth == 0 || p.files == 0) throw std::invalid_argument("trace generator needs files and depth");
  sim::Rng rng(sim::derive_seed(p.seed, {sim::hash_tag("trace")}));
  std::vector<TraceRecord> out;
  TimeMs t = 0;
  for (std::size_t i = 0; i < p.records; ++i) {
    TraceRecord r;
    t += rng.uniform_int(0, 2 * p.mean_gap_ms);
    r.offset_ms = t;
    r.kind = rng.unit() < p.data_fraction ? TraceRecord::Kind::data : TraceRecord::Kind::meta;
    r.path_depth = static_cast<unsigned>(rng.uniform_int(1, p.max_depth));
    r.file_id = "f" + std::to_string(rng.uniform_int(0, static_cast<std::int64_t>(p.files) - 1));
    out.push_back(std::move(r));
  }
  return out;
}

void write_trace(std::ostream& out, const std::vector<TraceRecord>& records) {
  out << "# offset_ms,kind,path_depth,file_id\n";
  for (const auto& r : records) {
    out << r.offset_ms << ',' << (r.kind == TraceRecord::Kind::meta ? "meta" : "data") << ',' << r.path_depth << ','
        << r.file_id << '\n';
  }
}

}  // namespace amsim::scenario
