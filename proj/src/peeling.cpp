#include "stdf/peeling.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace stdf {

std::uint64_t peeling_flow(const QueryContext& ctx, const std::vector<std::uint32_t>& src_idx,
                           const std::vector<std::uint32_t>& sink_idx, bool u_in_sources,
                           std::uint32_t u_index) {
  std::vector<std::uint32_t> src = src_idx, sink = sink_idx;
  auto& side = u_in_sources ? src : sink;
  auto it = std::find(side.begin(), side.end(), u_index);
  if (it == side.end()) throw Error(ErrorCode::Argument, "candidate is not in the subset pair");
  const std::uint64_t whole = ctx.mflow(src, sink);
  side.erase(it);
  return whole - ctx.mflow(src, sink);
}

namespace {

struct Candidate {
  bool src_side;
  std::uint32_t index;  // into Query::sources / sinks
  Label label;
};

Witness witness_of(const QueryContext& ctx, const std::vector<std::uint32_t>& src,
                   const std::vector<std::uint32_t>& sink) {
  Witness w;
  for (std::uint32_t i : src) w.sources.push_back(ctx.source_label(i));
  for (std::uint32_t j : sink) w.sinks.push_back(ctx.sink_label(j));
  std::sort(w.sources.begin(), w.sources.end());
  std::sort(w.sinks.begin(), w.sinks.end());
  return w;
}

std::vector<std::uint32_t> without(const std::vector<std::uint32_t>& v, std::uint32_t x) {
  std::vector<std::uint32_t> out;
  out.reserve(v.size() - 1);
  for (std::uint32_t e : v)
    if (e != x) out.push_back(e);
  return out;
}

PeelResult run_peel(const QueryContext& ctx, const WccPair& pair, const PeelOptions& opts,
                    bool parallel) {
  std::vector<std::uint32_t> src = pair.sources, sink = pair.sinks;
  const std::size_t n = src.size() + sink.size();

  PeelResult result;
  result.df.values.assign(n + 1, 0);
  result.df.witnesses.resize(n + 1);

  std::map<Label, std::uint64_t> lpf;
  std::set<Label> source_labels;
  if (opts.prune) {
    for (std::uint32_t i : src) {
      lpf[ctx.source_label(i)] = 0;
      source_labels.insert(ctx.source_label(i));
    }
    for (std::uint32_t j : sink) lpf[ctx.sink_label(j)] = 0;
  }

  std::uint64_t current = ctx.mflow(src, sink);
  for (std::size_t size = n; size >= 1; --size) {
    std::vector<Candidate> cands;
    for (std::uint32_t i : src) cands.push_back({true, i, ctx.source_label(i)});
    for (std::uint32_t j : sink) cands.push_back({false, j, ctx.sink_label(j)});

    PeelStep step;
    step.size = static_cast<std::uint32_t>(size);
    step.mflow = current;
    step.sets = witness_of(ctx, src, sink);

    // pf of a candidate = current - flow with the candidate removed
    auto flow_without = [&](const Candidate& c) {
      return c.src_side ? ctx.mflow(without(src, c.index), sink)
                        : ctx.mflow(src, without(sink, c.index));
    };

    std::size_t chosen = 0;
    std::uint64_t chosen_pf = 0, chosen_rest = 0;
    if (!opts.prune) {
      std::vector<std::uint64_t> rest(cands.size());
      if (parallel && cands.size() > 1) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t c = 0; c < static_cast<std::int64_t>(cands.size()); ++c)
          rest[c] = flow_without(cands[c]);
      } else {
        for (std::size_t c = 0; c < cands.size(); ++c) rest[c] = flow_without(cands[c]);
      }
      bool first = true;
      for (std::size_t c = 0; c < cands.size(); ++c) {
        const std::uint64_t pf = current - rest[c];
        if (first || pf < chosen_pf || (pf == chosen_pf && cands[c].label < cands[chosen].label)) {
          first = false;
          chosen = c;
          chosen_pf = pf;
          chosen_rest = rest[c];
        }
      }
      current = chosen_rest;
      step.delta = chosen_pf;
    } else {
      std::sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
        if (lpf[a.label] != lpf[b.label]) return lpf[a.label] < lpf[b.label];
        return a.label < b.label;
      });
      if (opts.record_lpf)
        for (const Candidate& c : cands) step.lpf_at_scan.emplace_back(c.label, lpf[c.label]);

      bool first = true;
      for (std::size_t c = 0; c < cands.size(); ++c) {
        if (!first && chosen_pf <= lpf[cands[c].label]) break;
        const std::uint64_t pf = current - flow_without(cands[c]);
        lpf[cands[c].label] = pf;
        if (first || pf < chosen_pf || (pf == chosen_pf && cands[c].label < cands[chosen].label)) {
          first = false;
          chosen = c;
          chosen_pf = pf;
        }
      }
      lpf.erase(cands[chosen].label);
    }

    step.peeled = cands[chosen].label;
    step.from_source_side = cands[chosen].src_side;
    if (cands[chosen].src_side)
      src = without(src, cands[chosen].index);
    else
      sink = without(sink, cands[chosen].index);

    if (opts.prune) {
      const std::uint64_t next = ctx.mflow(src, sink);
      step.delta = current - next;
      current = next;
      for (auto& [label, bound] : lpf) {
        const bool cross = (source_labels.count(label) != 0) != cands[chosen].src_side;
        if (cross) bound = bound > step.delta ? bound - step.delta : 0;
      }
    }

    result.df.values[size] = step.mflow;
    result.df.witnesses[size] = step.sets;
    result.trace.steps.push_back(std::move(step));
  }
  return result;
}

}  // namespace

PeelResult peel(const QueryContext& ctx, const WccPair& pair, const PeelOptions& opts,
                EvalStats& stats) {
  (void)stats;
  return run_peel(ctx, pair, opts, opts.parallel);
}

PeelResult peel_serial(const QueryContext& ctx, const WccPair& pair, const PeelOptions& opts,
                       EvalStats& stats) {
  (void)stats;
  return run_peel(ctx, pair, opts, false);
}

namespace {

WccPair whole_query_pair(const QueryContext& ctx) {
  WccPair pair;
  pair.sources.resize(ctx.query().sources.size());
  pair.sinks.resize(ctx.query().sinks.size());
  std::iota(pair.sources.begin(), pair.sources.end(), 0u);
  std::iota(pair.sinks.begin(), pair.sinks.end(), 0u);
  std::sort(pair.sources.begin(), pair.sources.end(), [&](std::uint32_t a, std::uint32_t b) {
    return ctx.source_label(a) < ctx.source_label(b);
  });
  std::sort(pair.sinks.begin(), pair.sinks.end(), [&](std::uint32_t a, std::uint32_t b) {
    return ctx.sink_label(a) < ctx.sink_label(b);
  });
  return pair;
}

}  // namespace

PeelRunResult stdf_peel(const QueryContext& ctx, const PeelOptions& opts, EvalStats& stats) {
  PeelResult peeled = peel(ctx, whole_query_pair(ctx), opts, stats);
  PeelRunResult result;
  result.answer = answer(peeled.df, ctx.query().k);
  result.trace = std::move(peeled.trace);
  result.df = std::move(peeled.df);
  stats.maxflow_calls = ctx.maxflow_calls();
  return result;
}

PeelDcResult peel_dc(const QueryContext& ctx, const PeelDcOptions& opts, EvalStats& stats) {
  PeelDcResult result;
  result.pairs = decompose(ctx);
  bool timed_out = false;
  for (const WccPair& pair : result.pairs) {
    if (pair.size() <= opts.exact_wcc_threshold) {
      DfResult r = df_exact(ctx, pair, opts.exact, stats);
      timed_out = timed_out || r.timed_out;
      result.per_wcc.push_back(std::move(r.df));
      result.traces.emplace_back(std::nullopt);
    } else {
      PeelResult r = peel(ctx, pair, opts.peel, stats);
      result.per_wcc.push_back(std::move(r.df));
      result.traces.emplace_back(std::move(r.trace));
    }
  }
  result.merged = merge_arrays(result.per_wcc);
  result.answer = answer(result.merged, ctx.query().k);
  result.answer.timed_out = timed_out;
  stats.maxflow_calls = ctx.maxflow_calls();
  return result;
}

}  // namespace stdf
