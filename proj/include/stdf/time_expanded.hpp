#pragma once

#include <iosfwd>
#include <vector>

#include "stdf/network.hpp"

namespace stdf {

enum class VertexRole : std::uint8_t { FlowOut, FlowIn, FlowCrossing };

const char* role_name(VertexRole r);

// Static time-expanded image of a temporal network. Every (vertex, incident
// timestamp) pair becomes one copy; a horizontal edge carries a transaction's
// capacity between same-timestamp copies, and vertical edges of unbounded
// capacity advance each vertex through time. Running a classic max-flow
// algorithm on this network lets it undo earlier temporal routing decisions,
// which direct augmentation on the temporal network cannot.
struct TimeExpandedNetwork {
  StaticFlowNetwork net;
  VertexId original_vertex_count = 0;
  bool compressed = false;

  // per expanded vertex; merged super vertices have owner kNoVertex
  std::vector<VertexId> owner;
  std::vector<std::int64_t> stamp;

  // per original vertex, copies ascending by timestamp; cleared by compression
  std::vector<std::vector<VertexId>> copies;

  // temporal edge id <-> horizontal edge id; cleared by compression
  std::vector<EdgeId> to_horizontal;
  std::vector<EdgeId> from_horizontal;  // kNoEdge on vertical edges

  // per original vertex; kNoVertex when it has no copies or when the tracked
  // copy lost its identity in a merge
  std::vector<VertexId> earliest;
  std::vector<VertexId> latest;

  VertexId copy_at(VertexId original, std::int64_t timestamp) const;
};

struct ReduceResult {
  TemporalFlowNetwork net;          // same vertex ids, surviving edges only
  std::vector<EdgeId> source_edge;  // per surviving edge, its id in the input
};

// Removes edges and vertices that cannot carry any temporal flow from S to T:
// an edge leaving a non-source before anything could have arrived there, an
// edge arriving at a non-sink after everything has already left, and vertices
// left with no way in (outside S) or no way out (outside T). Iterates to a
// fixpoint; each pass classifies against a snapshot of the previous pass.
ReduceResult reduce(const TemporalFlowNetwork& tfn,
                    const std::vector<VertexId>& S,
                    const std::vector<VertexId>& T);

TimeExpandedNetwork transform(const TemporalFlowNetwork& tfn);

// FlowOut: nothing enters except possibly one unbounded edge, so whatever
// leaves is reroutable. FlowIn: the mirror image on the out side. Everything
// with both a bounded way in and a bounded way out is FlowCrossing. A vertex
// satisfying both degree clauses counts as FlowOut.
VertexRole classify(const StaticFlowNetwork& net, VertexId v);

struct VcpResult {
  StaticFlowNetwork net;
  VertexId super_vertex = kNoVertex;  // id in the new network
  std::vector<VertexId> remap;        // old id -> new id; u1 and u2 -> super_vertex
};

// Contracts the edge (u1,u2): a super vertex absorbs both endpoints' edges,
// parallel edges produced by the absorption are merged by saturating capacity
// addition, and the endpoints disappear. Survivors keep their relative order;
// the super vertex takes the highest id.
VcpResult vcp(const StaticFlowNetwork& net, VertexId u1, VertexId u2);

// Repeatedly contracts adjacent copies whenever the pair's roles make the
// merge flow-preserving (both FlowIn, both FlowOut, FlowIn before FlowOut,
// FlowIn before FlowCrossing, or FlowCrossing before FlowOut), never touching
// a protected copy. Merged vertices are recolored, chains shrink to at most
// one FlowOut head, a crossing core and one FlowIn tail, and every max-flow
// value between protected copies is unchanged.
TimeExpandedNetwork compress(const TimeExpandedNetwork& ten,
                             const std::vector<VertexId>& protected_copies);

bool is_dag(const StaticFlowNetwork& net);

// CSV with header `src,dst,capacity`; unbounded capacity is written as `inf`.
void write_expanded_csv(const TimeExpandedNetwork& ten, std::ostream& out);

}  // namespace stdf
