#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "stdf/context.hpp"

namespace stdf {

using Deadline = std::chrono::steady_clock::time_point;

// Splits the query's terminals into weakly connected components of the
// source-to-sink reachability graph, ordered by smallest member label.
// Terminals reaching no counterpart become singleton pairs that can only
// contribute zero flow, kept so every total size up to |S|+|T| stays
// expressible.
std::vector<WccPair> decompose(const QueryContext& ctx);

struct ExactOptions {
  std::uint64_t budget = 1ull << 20;  // max subset evaluations per component
  std::optional<Deadline> deadline;
  bool parallel = true;
};

struct DfResult {
  DensestFlowArray df;
  bool timed_out = false;
};

// Exact densest-flow array by full subset enumeration: one evaluation per
// subset pair (empty sides count but are not solved), keeping per size the
// best value with the lexicographically smallest achieving pair. Past the
// deadline the partial array holds the best values found so far.
DfResult df_exact(const QueryContext& ctx, const WccPair& pair, const ExactOptions& opts,
                  EvalStats& stats);

// Single-threaded reference for the enumeration kernel.
DfResult df_exact_serial(const QueryContext& ctx, const WccPair& pair, const ExactOptions& opts,
                         EvalStats& stats);

// Max-plus merge of per-component arrays (recursive binary merge of pairwise
// convolutions). Values are invariant to merge order; witness choice between
// equal-valued combinations is by lexicographic order within each pairwise
// step.
DensestFlowArray merge_arrays(const std::vector<DensestFlowArray>& arrays);

// Best density over sizes k..n, ties to the smaller size; degenerate when no
// qualifying size has positive flow.
StdfAnswer answer(const DensestFlowArray& df, std::uint64_t k);

struct ExactResult {
  StdfAnswer answer;
  std::vector<WccPair> pairs;
  std::vector<DensestFlowArray> per_wcc;
  DensestFlowArray merged;
  bool timed_out = false;
};

ExactResult stdf_exact(const QueryContext& ctx, const ExactOptions& opts, EvalStats& stats);

}  // namespace stdf
