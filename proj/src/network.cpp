#include "stdf/network.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace stdf {

namespace {

std::uint64_t pair_key(VertexId src, VertexId dst) {
  return (static_cast<std::uint64_t>(src) << 32) | dst;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_int(const std::string& field, std::size_t line, const char* what) {
  const std::string v = trim(field);
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec == std::errc::result_out_of_range)
    throw Error(ErrorCode::Parse,
                "line " + std::to_string(line) + ": " + what + " out of range: '" + v + "'");
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw Error(ErrorCode::Parse,
                "line " + std::to_string(line) + ": malformed " + what + ": '" + v + "'");
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

VertexId TemporalFlowNetwork::vertex_of(Label l) const {
  auto it = by_label_.find(l);
  if (it == by_label_.end())
    throw Error(ErrorCode::Query, "unknown vertex label " + std::to_string(l));
  return it->second;
}

VertexId TemporalFlowNetwork::add_vertex(Label label) {
  if (by_label_.count(label))
    throw Error(ErrorCode::Internal, "duplicate vertex label " + std::to_string(label));
  VertexId id = vertex_count();
  labels_.push_back(label);
  out_.emplace_back();
  in_.emplace_back();
  by_label_.emplace(label, id);
  if (label <= next_synthetic_) next_synthetic_ = label - 1;
  return id;
}

VertexId TemporalFlowNetwork::ensure_vertex(Label label) {
  auto it = by_label_.find(label);
  if (it != by_label_.end()) return it->second;
  return add_vertex(label);
}

VertexId TemporalFlowNetwork::add_synthetic_vertex() {
  return add_vertex(next_synthetic_);
}

bool TemporalFlowNetwork::has_edge(VertexId src, VertexId dst) const {
  return pairs_.count(pair_key(src, dst)) != 0;
}

EdgeId TemporalFlowNetwork::add_edge(VertexId src, VertexId dst, std::uint64_t capacity,
                                     std::int64_t timestamp) {
  if (src >= vertex_count() || dst >= vertex_count())
    throw Error(ErrorCode::Internal, "edge endpoint out of range");
  if (src == dst)
    throw Error(ErrorCode::Validation,
                "self-loop on vertex " + std::to_string(labels_[src]));
  if (timestamp < 1) throw Error(ErrorCode::Validation, "timestamp must be >= 1");
  if (has_edge(src, dst))
    throw Error(ErrorCode::Validation, "duplicate edge " + std::to_string(labels_[src]) + " -> " +
                                           std::to_string(labels_[dst]));
  EdgeId id = static_cast<EdgeId>(edges_.size());
  edges_.push_back({src, dst, capacity, timestamp});
  out_[src].push_back(id);
  in_[dst].push_back(id);
  pairs_.insert(pair_key(src, dst));
  return id;
}

VertexId StaticFlowNetwork::add_vertex() {
  out_.emplace_back();
  in_.emplace_back();
  return vertex_count_++;
}

void StaticFlowNetwork::add_vertices(std::uint32_t n) {
  for (std::uint32_t i = 0; i < n; ++i) add_vertex();
}

EdgeId StaticFlowNetwork::add_edge(VertexId src, VertexId dst, Capacity capacity) {
  if (src >= vertex_count_ || dst >= vertex_count_)
    throw Error(ErrorCode::Internal, "edge endpoint out of range");
  if (src == dst) throw Error(ErrorCode::Internal, "self-loop in static network");
  EdgeId id = static_cast<EdgeId>(edges_.size());
  edges_.push_back({src, dst, capacity});
  out_[src].push_back(id);
  in_[dst].push_back(id);
  return id;
}

TemporalFlowNetwork ingest_edge_list(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::Parse, "empty input, expected header");
  if (trim(line) != "src,dst,capacity,timestamp")
    throw Error(ErrorCode::Parse, "line 1: expected header 'src,dst,capacity,timestamp', got '" +
                                      trim(line) + "'");

  TemporalFlowNetwork net;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() != 4)
      throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected 4 fields, got " +
                                        std::to_string(fields.size()));
    Label src_label = parse_int<Label>(fields[0], line_no, "src");
    Label dst_label = parse_int<Label>(fields[1], line_no, "dst");
    std::uint64_t capacity = parse_int<std::uint64_t>(fields[2], line_no, "capacity");
    std::int64_t timestamp = parse_int<std::int64_t>(fields[3], line_no, "timestamp");
    if (timestamp < 1)
      throw Error(ErrorCode::Validation,
                  "line " + std::to_string(line_no) + ": timestamp must be >= 1");
    if (src_label == dst_label)
      throw Error(ErrorCode::Validation, "line " + std::to_string(line_no) + ": self-loop on " +
                                             std::to_string(src_label));
    VertexId src = net.ensure_vertex(src_label);
    VertexId dst = net.ensure_vertex(dst_label);
    if (net.has_edge(src, dst)) {
      // parallel transaction: reroute through a fresh intermediate vertex
      VertexId mid = net.add_synthetic_vertex();
      net.add_edge(src, mid, capacity, timestamp);
      net.add_edge(mid, dst, capacity, timestamp);
    } else {
      net.add_edge(src, dst, capacity, timestamp);
    }
  }
  return net;
}

TemporalFlowNetwork ingest_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return ingest_edge_list(in);
}

void write_edge_list(const TemporalFlowNetwork& net, std::ostream& out) {
  out << "src,dst,capacity,timestamp\n";
  for (const TemporalEdge& e : net.edges())
    out << net.label_of(e.src) << ',' << net.label_of(e.dst) << ',' << e.capacity << ','
        << e.timestamp << '\n';
}

TemporalFlowNetwork window(const TemporalFlowNetwork& net, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw Error(ErrorCode::Argument, "window start exceeds window end");
  TemporalFlowNetwork out;
  for (const TemporalEdge& e : net.edges()) {
    if (e.timestamp < lo || e.timestamp > hi) continue;
    VertexId src = out.ensure_vertex(net.label_of(e.src));
    VertexId dst = out.ensure_vertex(net.label_of(e.dst));
    out.add_edge(src, dst, e.capacity, e.timestamp);
  }
  return out;
}

StaticFlowNetwork strip_timestamps(const TemporalFlowNetwork& net) {
  StaticFlowNetwork out;
  out.add_vertices(net.vertex_count());
  for (const TemporalEdge& e : net.edges())
    out.add_edge(e.src, e.dst, Capacity::finite(e.capacity));
  return out;
}

SuperTerminals add_super_terminals(const StaticFlowNetwork& net, const std::vector<VertexId>& S,
                                   const std::vector<VertexId>& T) {
  if (S.empty() || T.empty()) throw Error(ErrorCode::Query, "empty terminal set");
  for (VertexId v : S)
    if (v >= net.vertex_count()) throw Error(ErrorCode::Query, "source out of range");
  for (VertexId v : T) {
    if (v >= net.vertex_count()) throw Error(ErrorCode::Query, "sink out of range");
    if (std::find(S.begin(), S.end(), v) != S.end())
      throw Error(ErrorCode::Query, "terminal sets overlap");
  }
  SuperTerminals result;
  result.net = net;
  result.source = result.net.add_vertex();
  result.sink = result.net.add_vertex();
  for (VertexId v : S) result.net.add_edge(result.source, v, Capacity::infinite());
  for (VertexId v : T) result.net.add_edge(v, result.sink, Capacity::infinite());
  return result;
}

}  // namespace stdf
