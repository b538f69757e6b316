#pragma once

#include <string>

#include "stdf/context.hpp"
#include "stdf/maxflow.hpp"

// Independent reference implementations used by the test suite. Nothing here
// shares preprocessing with the main pipeline: no reduction, no compression,
// so a preprocessing bug cannot hide on both sides of a comparison.
namespace stdf::oracle {

struct TemporalFlowAssignment {
  std::vector<std::uint64_t> edge_flow;  // per temporal edge, zero default
};

enum class ViolationKind { None, Capacity, Cumulative, Conservation };

struct FeasibilityReport {
  bool feasible = true;
  ViolationKind kind = ViolationKind::None;
  Label vertex = 0;
  std::int64_t timestamp = 0;
  std::string detail;
};

// Checks the three temporal flow conditions directly on the temporal
// network: per-edge capacity, cumulative arrive-before-leave at every
// (vertex, timestamp), and final conservation at every non-terminal vertex.
// Reports the first violation in edge order, then vertex label order.
FeasibilityReport check_temporal_feasibility(const TemporalFlowNetwork& tfn,
                                             const TemporalFlowAssignment& assignment,
                                             VertexId s, VertexId t);

// Net outflow of s under the assignment.
std::uint64_t assignment_value(const TemporalFlowNetwork& tfn,
                               const TemporalFlowAssignment& assignment, VertexId s);

// Reads each temporal edge's flow off its horizontal edge. Requires an
// uncompressed expanded network.
TemporalFlowAssignment project_flow(const TimeExpandedNetwork& ten, const Flow& flow);

struct LiftResult {
  TimeExpandedNetwork ten;
  Flow flow;
};

// Expresses a temporally feasible assignment as a flow on the expanded
// network of equal value: horizontal edges take the assignment, vertical
// edges carry each vertex's stored balance forward in time (future emissions
// for s, accumulated arrivals elsewhere). Rejects infeasible input with the
// feasibility report's detail.
LiftResult lift_flow(const TemporalFlowNetwork& tfn, const TemporalFlowAssignment& assignment,
                     VertexId s, VertexId t);

struct BruteforceResult {
  StdfAnswer answer;
  std::uint64_t subset_evaluations = 0;
};

// Exact reference for densest-flow queries: expand without reduction or
// compression, evaluate every subset pair directly. Hard-capped at 12
// terminals.
BruteforceResult stdf_bruteforce(const TemporalFlowNetwork& tfn, const Query& q);

}  // namespace stdf::oracle
