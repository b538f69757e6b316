#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "stdf/densest.hpp"

namespace stdf {

// Drop in the subset pair's max flow when one terminal is removed.
std::uint64_t peeling_flow(const QueryContext& ctx, const std::vector<std::uint32_t>& src_idx,
                           const std::vector<std::uint32_t>& sink_idx, bool u_in_sources,
                           std::uint32_t u_index);

struct PeelStep {
  std::uint32_t size = 0;       // |S_i| + |T_i| before this peel
  std::uint64_t mflow = 0;      // max flow of the surviving pair
  Witness sets;                 // the surviving pair itself
  Label peeled = 0;
  bool from_source_side = false;
  std::uint64_t delta = 0;      // flow lost by peeling
  // candidate lower bounds at scan start, recorded on request in pruned runs
  std::vector<std::pair<Label, std::uint64_t>> lpf_at_scan;
};

// Steps from size n down to 1; the deltas telescope to the pair's max flow.
struct PeelingTrace {
  std::vector<PeelStep> steps;
};

struct PeelOptions {
  bool prune = false;
  bool parallel = true;   // candidate scan; pruned scans are inherently serial
  bool record_lpf = false;
};

struct PeelResult {
  PeelingTrace trace;
  DensestFlowArray df;  // trace flows per size, surviving pairs as witnesses
};

// Greedy peeling: each step removes the terminal whose removal costs the
// least flow (ties to the smallest label). The pruned variant keeps a lower
// bound per candidate, scans in ascending bound order, stops as soon as the
// best found cost is at or below the next bound, refines a candidate's bound
// on every evaluation, and recomputes the post-peel flow exactly.
PeelResult peel(const QueryContext& ctx, const WccPair& pair, const PeelOptions& opts,
                EvalStats& stats);

// Single-threaded reference for the candidate scan kernel.
PeelResult peel_serial(const QueryContext& ctx, const WccPair& pair, const PeelOptions& opts,
                       EvalStats& stats);

struct PeelRunResult {
  StdfAnswer answer;
  PeelingTrace trace;
  DensestFlowArray df;
};

// Peeling over the whole undecomposed query; answer per the density rule
// over trace sizes >= k. Guaranteed within a factor 3 of the exact optimum.
PeelRunResult stdf_peel(const QueryContext& ctx, const PeelOptions& opts, EvalStats& stats);

struct PeelDcOptions {
  PeelOptions peel;
  ExactOptions exact;
  std::uint64_t exact_wcc_threshold = 6;  // components this small use df_exact
};

struct PeelDcResult {
  StdfAnswer answer;
  std::vector<WccPair> pairs;
  std::vector<DensestFlowArray> per_wcc;
  std::vector<std::optional<PeelingTrace>> traces;  // set where peeling ran
  DensestFlowArray merged;
};

// Decompose, peel (or exactly enumerate) each component, merge the arrays,
// answer from the merged array.
PeelDcResult peel_dc(const QueryContext& ctx, const PeelDcOptions& opts, EvalStats& stats);

}  // namespace stdf
