#pragma once

#include <unordered_map>
#include <utility>
#include <vector>

#include "stdf/network.hpp"
#include "stdf/time_expanded.hpp"

namespace stdf {

struct Flow {
  std::uint64_t value = 0;
  std::vector<std::uint64_t> edge_flow;  // per static edge id
};

using CapacityOverride = std::pair<EdgeId, Capacity>;

// Blocking-flow (level graph) max-flow solver over a fixed network. The arc
// structure is built once; solve() is const and safe to call concurrently,
// and takes optional per-call capacity overrides, used to switch terminal
// attachment edges on and off without rebuilding anything.
class FlowSolver {
 public:
  explicit FlowSolver(const StaticFlowNetwork& net);

  Flow solve(VertexId s, VertexId t) const;
  Flow solve(VertexId s, VertexId t, const std::vector<CapacityOverride>& overrides) const;

 private:
  VertexId vertex_count_;
  std::vector<Capacity> base_capacity_;   // per edge
  std::vector<VertexId> arc_target_;      // per arc; arcs 2e (forward), 2e+1 (back)
  std::vector<std::uint32_t> adj_start_;  // CSR over vertices
  std::vector<std::uint32_t> adj_arcs_;   // ascending edge id within each vertex
};

Flow max_flow(const StaticFlowNetwork& net, VertexId s, VertexId t);

bool reach(const StaticFlowNetwork& net, VertexId s, VertexId t);

// Forward-traversal reachability with per-source memoization.
class Reachability {
 public:
  explicit Reachability(const StaticFlowNetwork& net) : net_(net) {}
  bool reach(VertexId s, VertexId t);

 private:
  const StaticFlowNetwork& net_;
  std::unordered_map<VertexId, std::vector<char>> visited_;
};

struct PipelineOptions {
  bool use_reduce = true;
  bool use_compress = true;
};

struct TemporalMaxflowResult {
  std::uint64_t value = 0;
  TimeExpandedNetwork ten;  // the network the flow lives on
  Flow flow;
};

// Maximum temporal flow: reduce, expand, optionally compress (protecting the
// terminal copies), then run max flow from the earliest copy of s to the
// latest copy of t. Returns 0 with an empty flow when either terminal has no
// surviving copy.
TemporalMaxflowResult max_temporal_flow(const TemporalFlowNetwork& tfn, VertexId s, VertexId t,
                                        const PipelineOptions& opts = {});

struct NaiveFlowResult {
  std::uint64_t value = 0;
  std::vector<std::uint64_t> edge_flow;  // per temporal edge
};

// Greedy baseline: repeatedly augments along timestamp-monotone residual
// paths of the temporal network itself (reverse arcs keep their original
// timestamps). Exhaustive per step but unable to reroute flow across time,
// so it can undershoot the true maximum. Kept for comparison and tests.
NaiveFlowResult naive_temporal_max_flow(const TemporalFlowNetwork& tfn, VertexId s, VertexId t);

}  // namespace stdf
