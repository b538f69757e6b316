#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "stdf/capacity.hpp"
#include "stdf/error.hpp"

namespace stdf {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using Label = std::int64_t;

inline constexpr VertexId kNoVertex = static_cast<VertexId>(-1);
inline constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);

// One transaction: capacity is always finite here, timestamp >= 1.
struct TemporalEdge {
  VertexId src = 0;
  VertexId dst = 0;
  std::uint64_t capacity = 0;
  std::int64_t timestamp = 0;
};

// Directed temporal flow network. Vertices carry dense internal ids; the
// label table maps them back to the ids used in the input file. Vertices
// introduced by multi-edge normalization get negative labels, kept strictly
// below every label seen so far.
class TemporalFlowNetwork {
 public:
  VertexId vertex_count() const { return static_cast<VertexId>(labels_.size()); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<TemporalEdge>& edges() const { return edges_; }
  const TemporalEdge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_[v]; }
  const std::vector<EdgeId>& in_edges(VertexId v) const { return in_[v]; }

  Label label_of(VertexId v) const { return labels_[v]; }
  const std::vector<Label>& labels() const { return labels_; }
  bool has_label(Label l) const { return by_label_.count(l) != 0; }
  VertexId vertex_of(Label l) const;

  VertexId add_vertex(Label label);
  VertexId ensure_vertex(Label label);
  VertexId add_synthetic_vertex();

  bool has_edge(VertexId src, VertexId dst) const;
  EdgeId add_edge(VertexId src, VertexId dst, std::uint64_t capacity, std::int64_t timestamp);

 private:
  std::vector<TemporalEdge> edges_;
  std::vector<Label> labels_;
  std::vector<std::vector<EdgeId>> out_, in_;
  std::unordered_map<Label, VertexId> by_label_;
  std::unordered_set<std::uint64_t> pairs_;
  Label next_synthetic_ = -1;
};

struct StaticEdge {
  VertexId src = 0;
  VertexId dst = 0;
  Capacity capacity;
};

// Plain capacitated digraph; parallel edges are permitted (the expanded
// network never produces them, vertex merging resolves them as it goes).
class StaticFlowNetwork {
 public:
  VertexId vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<StaticEdge>& edges() const { return edges_; }
  const StaticEdge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_[v]; }
  const std::vector<EdgeId>& in_edges(VertexId v) const { return in_[v]; }

  VertexId add_vertex();
  void add_vertices(std::uint32_t n);
  EdgeId add_edge(VertexId src, VertexId dst, Capacity capacity);

 private:
  VertexId vertex_count_ = 0;
  std::vector<StaticEdge> edges_;
  std::vector<std::vector<EdgeId>> out_, in_;
};

// CSV with header `src,dst,capacity,timestamp`. Parallel (src,dst) records
// after the first are rerouted through a fresh intermediate vertex m as
// src->m, m->dst, both with the record's capacity and timestamp, so the
// network stays simple without losing any flow.
TemporalFlowNetwork ingest_edge_list(std::istream& in);
TemporalFlowNetwork ingest_edge_list_file(const std::string& path);
void write_edge_list(const TemporalFlowNetwork& net, std::ostream& out);

// Sub-network induced by edges with lo <= timestamp <= hi; vertices left
// without any incident edge are dropped, surviving vertices are renumbered
// densely and keep their labels.
TemporalFlowNetwork window(const TemporalFlowNetwork& net, std::int64_t lo, std::int64_t hi);

// The network with timestamps ignored, edge ids preserved.
StaticFlowNetwork strip_timestamps(const TemporalFlowNetwork& net);

struct SuperTerminals {
  StaticFlowNetwork net;
  VertexId source = kNoVertex;
  VertexId sink = kNoVertex;
};

// Adds a super source wired to every vertex of S and a super sink wired from
// every vertex of T, all with unbounded capacity; max flow between the super
// terminals equals the multi-terminal maximum between S and T.
SuperTerminals add_super_terminals(const StaticFlowNetwork& net,
                                   const std::vector<VertexId>& S,
                                   const std::vector<VertexId>& T);

}  // namespace stdf
