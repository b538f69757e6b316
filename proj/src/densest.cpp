#include "stdf/densest.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <numeric>
#include <string>

#include "stdf/parallel.hpp"

namespace stdf {

int max_threads() { return omp_get_max_threads(); }

void set_max_threads(int n) {
  if (n < 1) throw Error(ErrorCode::Argument, "thread count must be at least 1");
  omp_set_num_threads(n);
}

int compare(const Density& a, const Density& b) {
  using wide = unsigned __int128;
  const wide lhs = static_cast<wide>(a.num) * b.den;
  const wide rhs = static_cast<wide>(b.num) * a.den;
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

bool lex_less(const Witness& a, const Witness& b) {
  if (a.sources != b.sources) return a.sources < b.sources;
  return a.sinks < b.sinks;
}

bool operator==(const Witness& a, const Witness& b) {
  return a.sources == b.sources && a.sinks == b.sinks;
}

namespace {

struct DisjointSets {
  std::vector<std::uint32_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<WccPair> decompose(const QueryContext& ctx) {
  const auto& q = ctx.query();
  const std::uint32_t n1 = static_cast<std::uint32_t>(q.sources.size());
  const std::uint32_t n2 = static_cast<std::uint32_t>(q.sinks.size());

  DisjointSets ds(n1 + n2);
  Reachability reachable(ctx.expanded().net);
  for (std::uint32_t i = 0; i < n1; ++i) {
    if (ctx.source_copy(i) == kNoVertex) continue;
    for (std::uint32_t j = 0; j < n2; ++j) {
      if (ctx.sink_copy(j) == kNoVertex) continue;
      if (reachable.reach(ctx.source_copy(i), ctx.sink_copy(j))) ds.unite(i, n1 + j);
    }
  }

  std::vector<std::vector<std::uint32_t>> group_sources(n1 + n2), group_sinks(n1 + n2);
  for (std::uint32_t i = 0; i < n1; ++i) group_sources[ds.find(i)].push_back(i);
  for (std::uint32_t j = 0; j < n2; ++j) group_sinks[ds.find(n1 + j)].push_back(j);

  std::vector<WccPair> pairs;
  for (std::uint32_t r = 0; r < n1 + n2; ++r) {
    if (group_sources[r].empty() && group_sinks[r].empty()) continue;
    WccPair p{std::move(group_sources[r]), std::move(group_sinks[r])};
    std::sort(p.sources.begin(), p.sources.end(), [&](std::uint32_t a, std::uint32_t b) {
      return ctx.source_label(a) < ctx.source_label(b);
    });
    std::sort(p.sinks.begin(), p.sinks.end(), [&](std::uint32_t a, std::uint32_t b) {
      return ctx.sink_label(a) < ctx.sink_label(b);
    });
    pairs.push_back(std::move(p));
  }

  auto least_label = [&](const WccPair& p) {
    Label m = std::numeric_limits<Label>::max();
    for (std::uint32_t i : p.sources) m = std::min(m, ctx.source_label(i));
    for (std::uint32_t j : p.sinks) m = std::min(m, ctx.sink_label(j));
    return m;
  };
  std::sort(pairs.begin(), pairs.end(),
            [&](const WccPair& a, const WccPair& b) { return least_label(a) < least_label(b); });
  return pairs;
}

namespace {

// sorted-set order in label space: walks to the smallest differing element,
// treating a set that runs out first as the smaller one
bool set_less(std::uint64_t a, std::uint64_t b) {
  if (a == b) return false;
  const std::uint64_t low = (a ^ b) & (~(a ^ b) + 1);
  if (a & low) return (b & ~(low - 1) & ~low) != 0;  // b continues past the divergence?
  return (a & ~(low - 1) & ~low) == 0;               // a is a strict prefix of b
}

bool pair_less(std::uint64_t asrc, std::uint64_t asink, std::uint64_t bsrc, std::uint64_t bsink) {
  if (asrc != bsrc) return set_less(asrc, bsrc);
  return set_less(asink, bsink);
}

struct BestTable {
  std::vector<std::uint64_t> value;
  std::vector<std::uint64_t> src_mask, sink_mask;
  std::vector<char> seeded;

  explicit BestTable(std::size_t n)
      : value(n + 1, 0), src_mask(n + 1, 0), sink_mask(n + 1, 0), seeded(n + 1, 0) {}

  void offer(std::size_t c, std::uint64_t val, std::uint64_t src, std::uint64_t sink) {
    if (!seeded[c] || val > value[c] ||
        (val == value[c] && pair_less(src, sink, src_mask[c], sink_mask[c]))) {
      seeded[c] = 1;
      value[c] = val;
      src_mask[c] = src;
      sink_mask[c] = sink;
    }
  }

  void absorb(const BestTable& other) {
    for (std::size_t c = 0; c < value.size(); ++c)
      if (other.seeded[c]) offer(c, other.value[c], other.src_mask[c], other.sink_mask[c]);
  }
};

DfResult enumerate_subsets(const QueryContext& ctx, const WccPair& pair, const ExactOptions& opts,
                           EvalStats& stats, bool parallel) {
  const std::size_t n1 = pair.sources.size(), n2 = pair.sinks.size();
  const std::size_t n = n1 + n2;
  if (n >= 63 || (1ull << n) > opts.budget)
    throw Error(ErrorCode::Budget,
                "subset enumeration over " + std::to_string(n) +
                    " terminals exceeds the evaluation budget; use a peeling algorithm");

  const std::uint64_t total = 1ull << n;
  const std::uint64_t src_bits = (n1 == 64) ? ~0ull : (1ull << n1) - 1;

  auto evaluate = [&](std::uint64_t mask) {
    const std::uint64_t src = mask & src_bits;
    const std::uint64_t sink = mask >> n1;
    if (src == 0 || sink == 0) return std::uint64_t{0};
    std::vector<std::uint32_t> si, ti;
    for (std::size_t i = 0; i < n1; ++i)
      if (src >> i & 1) si.push_back(pair.sources[i]);
    for (std::size_t j = 0; j < n2; ++j)
      if (sink >> j & 1) ti.push_back(pair.sinks[j]);
    return ctx.mflow(si, ti);
  };

  constexpr std::uint64_t kChunk = 1024;
  const std::uint64_t chunks = (total + kChunk - 1) / kChunk;
  std::atomic<bool> expired{false};
  std::uint64_t evaluated = 0;

  BestTable best(n);
  if (!parallel) {
    for (std::uint64_t chunk = 0; chunk < chunks && !expired.load(); ++chunk) {
      if (opts.deadline && std::chrono::steady_clock::now() > *opts.deadline) {
        expired.store(true);
        break;
      }
      const std::uint64_t hi = std::min(total, (chunk + 1) * kChunk);
      for (std::uint64_t mask = chunk * kChunk; mask < hi; ++mask) {
        best.offer(static_cast<std::size_t>(std::popcount(mask)), evaluate(mask),
                   mask & src_bits, mask >> n1);
        ++evaluated;
      }
    }
  } else {
#pragma omp parallel
    {
      BestTable local(n);
      std::uint64_t local_evaluated = 0;
#pragma omp for schedule(dynamic, 1) nowait
      for (std::int64_t chunk = 0; chunk < static_cast<std::int64_t>(chunks); ++chunk) {
        if (expired.load(std::memory_order_relaxed)) continue;
        if (opts.deadline && std::chrono::steady_clock::now() > *opts.deadline) {
          expired.store(true, std::memory_order_relaxed);
          continue;
        }
        const std::uint64_t lo = static_cast<std::uint64_t>(chunk) * kChunk;
        const std::uint64_t hi = std::min(total, lo + kChunk);
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
          local.offer(static_cast<std::size_t>(std::popcount(mask)), evaluate(mask),
                      mask & src_bits, mask >> n1);
          ++local_evaluated;
        }
      }
#pragma omp critical
      {
        best.absorb(local);
        evaluated += local_evaluated;
      }
    }
  }
  stats.subset_evaluations += evaluated;

  DfResult result;
  result.timed_out = expired.load();
  result.df.values.resize(n + 1, 0);
  result.df.witnesses.resize(n + 1);
  for (std::size_t c = 0; c <= n; ++c) {
    if (!best.seeded[c]) continue;
    result.df.values[c] = best.value[c];
    Witness& w = result.df.witnesses[c];
    for (std::size_t i = 0; i < n1; ++i)
      if (best.src_mask[c] >> i & 1) w.sources.push_back(ctx.source_label(pair.sources[i]));
    for (std::size_t j = 0; j < n2; ++j)
      if (best.sink_mask[c] >> j & 1) w.sinks.push_back(ctx.sink_label(pair.sinks[j]));
  }
  return result;
}

}  // namespace

DfResult df_exact(const QueryContext& ctx, const WccPair& pair, const ExactOptions& opts,
                  EvalStats& stats) {
  return enumerate_subsets(ctx, pair, opts, stats, opts.parallel);
}

DfResult df_exact_serial(const QueryContext& ctx, const WccPair& pair, const ExactOptions& opts,
                         EvalStats& stats) {
  return enumerate_subsets(ctx, pair, opts, stats, false);
}

namespace {

Witness join_witness(const Witness& a, const Witness& b) {
  Witness w;
  w.sources.resize(a.sources.size() + b.sources.size());
  std::merge(a.sources.begin(), a.sources.end(), b.sources.begin(), b.sources.end(),
             w.sources.begin());
  w.sinks.resize(a.sinks.size() + b.sinks.size());
  std::merge(a.sinks.begin(), a.sinks.end(), b.sinks.begin(), b.sinks.end(), w.sinks.begin());
  return w;
}

DensestFlowArray merge_two(const DensestFlowArray& a, const DensestFlowArray& b) {
  const std::size_t na = a.max_size(), nb = b.max_size();
  DensestFlowArray out;
  out.values.assign(na + nb + 1, 0);
  out.witnesses.resize(na + nb + 1);
  std::vector<char> seeded(na + nb + 1, 0);
  for (std::size_t i = 0; i <= na; ++i) {
    for (std::size_t j = 0; j <= nb; ++j) {
      const std::uint64_t val = a.values[i] + b.values[j];
      Witness w = join_witness(a.witnesses[i], b.witnesses[j]);
      const std::size_t c = i + j;
      if (!seeded[c] || val > out.values[c] ||
          (val == out.values[c] && lex_less(w, out.witnesses[c]))) {
        seeded[c] = 1;
        out.values[c] = val;
        out.witnesses[c] = std::move(w);
      }
    }
  }
  return out;
}

DensestFlowArray merge_range(const std::vector<DensestFlowArray>& arrays, std::size_t lo,
                             std::size_t hi) {
  if (hi - lo == 1) return arrays[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return merge_two(merge_range(arrays, lo, mid), merge_range(arrays, mid, hi));
}

}  // namespace

DensestFlowArray merge_arrays(const std::vector<DensestFlowArray>& arrays) {
  if (arrays.empty()) {
    DensestFlowArray trivial;
    trivial.values = {0};
    trivial.witnesses = {{}};
    return trivial;
  }
  return merge_range(arrays, 0, arrays.size());
}

StdfAnswer answer(const DensestFlowArray& df, std::uint64_t k) {
  if (k < 1) throw Error(ErrorCode::Argument, "subset size bound must be at least 1");
  const std::size_t n = df.max_size();
  if (k > n)
    throw Error(ErrorCode::Infeasible, "subset size bound " + std::to_string(k) + " exceeds the " +
                                           std::to_string(n) + " query terminals");

  std::size_t best = static_cast<std::size_t>(k);
  for (std::size_t c = best + 1; c <= n; ++c) {
    if (compare({df.values[c], c}, {df.values[best], best}) > 0) best = c;
  }

  StdfAnswer ans;
  ans.witness = df.witnesses[best];
  ans.value = df.values[best];
  ans.density = {df.values[best], best};
  ans.degenerate = ans.value == 0;
  return ans;
}

ExactResult stdf_exact(const QueryContext& ctx, const ExactOptions& opts, EvalStats& stats) {
  ExactResult result;
  result.pairs = decompose(ctx);
  for (const WccPair& pair : result.pairs) {
    DfResult r = df_exact(ctx, pair, opts, stats);
    result.timed_out = result.timed_out || r.timed_out;
    result.per_wcc.push_back(std::move(r.df));
  }
  result.merged = merge_arrays(result.per_wcc);
  result.answer = answer(result.merged, ctx.query().k);
  result.answer.timed_out = result.timed_out;
  stats.maxflow_calls = ctx.maxflow_calls();
  return result;
}

}  // namespace stdf
