#include "stdf/context.hpp"

#include <algorithm>
#include <unordered_set>

namespace stdf {

void validate_query(const TemporalFlowNetwork& tfn, const Query& q) {
  if (q.sources.empty()) throw Error(ErrorCode::Query, "query has no sources");
  if (q.sinks.empty()) throw Error(ErrorCode::Query, "query has no sinks");
  std::unordered_set<VertexId> seen;
  for (VertexId v : q.sources) {
    if (v >= tfn.vertex_count()) throw Error(ErrorCode::Query, "source vertex out of range");
    if (!seen.insert(v).second) throw Error(ErrorCode::Query, "duplicate source vertex");
  }
  for (VertexId v : q.sinks) {
    if (v >= tfn.vertex_count()) throw Error(ErrorCode::Query, "sink vertex out of range");
    if (!seen.insert(v).second)
      throw Error(ErrorCode::Query, "sink vertex duplicated or overlapping the sources");
  }
}

QueryContext::QueryContext(const TemporalFlowNetwork& tfn, Query q, PipelineOptions opts)
    : q_(std::move(q)) {
  validate_query(tfn, q_);
  for (VertexId v : q_.sources) source_labels_.push_back(tfn.label_of(v));
  for (VertexId v : q_.sinks) sink_labels_.push_back(tfn.label_of(v));

  input_size = {tfn.vertex_count(), tfn.edge_count()};

  const TemporalFlowNetwork* base = &tfn;
  ReduceResult red;
  if (opts.use_reduce) {
    red = reduce(tfn, q_.sources, q_.sinks);
    base = &red.net;
    // every vertex the reduction keeps is incident to a surviving edge
    std::vector<char> touched(red.net.vertex_count(), 0);
    for (const TemporalEdge& e : red.net.edges()) touched[e.src] = touched[e.dst] = 1;
    reduced_size = {static_cast<std::uint64_t>(std::count(touched.begin(), touched.end(), 1)),
                    red.net.edge_count()};
  } else {
    reduced_size = input_size;
  }

  ten_ = transform(*base);
  expanded_size = {ten_.net.vertex_count(), ten_.net.edge_count()};

  if (opts.use_compress) {
    std::vector<VertexId> keep;
    for (VertexId v : q_.sources)
      if (ten_.earliest[v] != kNoVertex) keep.push_back(ten_.earliest[v]);
    for (VertexId v : q_.sinks)
      if (ten_.latest[v] != kNoVertex) keep.push_back(ten_.latest[v]);
    ten_ = compress(ten_, keep);
  }
  compressed_size = {ten_.net.vertex_count(), ten_.net.edge_count()};

  for (VertexId v : q_.sources) source_copy_.push_back(ten_.earliest[v]);
  for (VertexId v : q_.sinks) sink_copy_.push_back(ten_.latest[v]);

  ext_ = ten_.net;
  super_source_ = ext_.add_vertex();
  super_sink_ = ext_.add_vertex();
  for (VertexId c : source_copy_)
    source_edge_.push_back(c == kNoVertex ? kNoEdge
                                          : ext_.add_edge(super_source_, c, Capacity::finite(0)));
  for (VertexId c : sink_copy_)
    sink_edge_.push_back(c == kNoVertex ? kNoEdge
                                        : ext_.add_edge(c, super_sink_, Capacity::finite(0)));
  solver_ = std::make_unique<FlowSolver>(ext_);
}

std::uint64_t QueryContext::mflow(const std::vector<std::uint32_t>& src_idx,
                                  const std::vector<std::uint32_t>& sink_idx) const {
  if (src_idx.empty() || sink_idx.empty()) return 0;
  std::vector<CapacityOverride> enable;
  enable.reserve(src_idx.size() + sink_idx.size());
  bool any_src = false, any_sink = false;
  for (std::uint32_t i : src_idx) {
    if (i >= source_edge_.size()) throw Error(ErrorCode::Argument, "source index out of range");
    if (source_edge_[i] == kNoEdge) continue;
    enable.emplace_back(source_edge_[i], Capacity::infinite());
    any_src = true;
  }
  for (std::uint32_t j : sink_idx) {
    if (j >= sink_edge_.size()) throw Error(ErrorCode::Argument, "sink index out of range");
    if (sink_edge_[j] == kNoEdge) continue;
    enable.emplace_back(sink_edge_[j], Capacity::infinite());
    any_sink = true;
  }
  if (!any_src || !any_sink) return 0;
  calls_.fetch_add(1, std::memory_order_relaxed);
  return solver_->solve(super_source_, super_sink_, enable).value;
}

}  // namespace stdf
