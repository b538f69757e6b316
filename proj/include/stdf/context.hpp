#pragma once

#include <atomic>
#include <memory>
#include <vector>

#include "stdf/maxflow.hpp"
#include "stdf/query.hpp"

namespace stdf {

struct StageSizes {
  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;
};

// Everything a query evaluation needs, prepared once: the reduced and
// expanded network with all terminal attachment copies protected from
// compression, plus a solver over that network extended with a super source
// and super sink whose per-terminal edges are disabled (capacity 0) until a
// subset evaluation switches them on.
class QueryContext {
 public:
  QueryContext(const TemporalFlowNetwork& tfn, Query q, PipelineOptions opts = {});

  const Query& query() const { return q_; }
  const TimeExpandedNetwork& expanded() const { return ten_; }
  const StaticFlowNetwork& extended() const { return ext_; }

  Label source_label(std::uint32_t i) const { return source_labels_[i]; }
  Label sink_label(std::uint32_t j) const { return sink_labels_[j]; }

  // attachment copy in the expanded network; kNoVertex when reduction left
  // the terminal with no copies
  VertexId source_copy(std::uint32_t i) const { return source_copy_[i]; }
  VertexId sink_copy(std::uint32_t j) const { return sink_copy_[j]; }

  // max flow between subsets given as indices into query().sources / sinks;
  // empty sides short-circuit to 0 without a solver run
  std::uint64_t mflow(const std::vector<std::uint32_t>& src_idx,
                      const std::vector<std::uint32_t>& sink_idx) const;

  std::uint64_t maxflow_calls() const { return calls_.load(std::memory_order_relaxed); }

  StageSizes input_size, reduced_size, expanded_size, compressed_size;

 private:
  Query q_;
  std::vector<Label> source_labels_, sink_labels_;
  TimeExpandedNetwork ten_;
  StaticFlowNetwork ext_;
  VertexId super_source_ = kNoVertex, super_sink_ = kNoVertex;
  std::vector<VertexId> source_copy_, sink_copy_;
  std::vector<EdgeId> source_edge_, sink_edge_;  // kNoEdge when copy absent
  std::unique_ptr<FlowSolver> solver_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

// Throws on empty sides, overlap, duplicate members, or out-of-range ids.
void validate_query(const TemporalFlowNetwork& tfn, const Query& q);

}  // namespace stdf
