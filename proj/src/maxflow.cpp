#include "stdf/maxflow.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace stdf {

namespace {

constexpr std::uint64_t kInfRes = Capacity::kInf;
constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

inline std::uint64_t res_min(std::uint64_t a, std::uint64_t b) { return a < b ? a : b; }

inline std::uint64_t res_sub(std::uint64_t a, std::uint64_t b) {
  return a == kInfRes ? kInfRes : a - b;
}

inline std::uint64_t res_add(std::uint64_t a, std::uint64_t b) {
  return (a == kInfRes || b == kInfRes) ? kInfRes : a + b;
}

}  // namespace

FlowSolver::FlowSolver(const StaticFlowNetwork& net) : vertex_count_(net.vertex_count()) {
  const std::size_t m = net.edge_count();
  base_capacity_.reserve(m);
  arc_target_.resize(2 * m);
  for (EdgeId e = 0; e < m; ++e) {
    base_capacity_.push_back(net.edge(e).capacity);
    arc_target_[2 * e] = net.edge(e).dst;
    arc_target_[2 * e + 1] = net.edge(e).src;
  }
  adj_start_.assign(vertex_count_ + 1, 0);
  for (EdgeId e = 0; e < m; ++e) {
    adj_start_[net.edge(e).src + 1]++;
    adj_start_[net.edge(e).dst + 1]++;
  }
  for (VertexId v = 0; v < vertex_count_; ++v) adj_start_[v + 1] += adj_start_[v];
  adj_arcs_.resize(2 * m);
  std::vector<std::uint32_t> cursor(adj_start_.begin(), adj_start_.end() - 1);
  for (EdgeId e = 0; e < m; ++e) {
    adj_arcs_[cursor[net.edge(e).src]++] = 2 * e;
    adj_arcs_[cursor[net.edge(e).dst]++] = 2 * e + 1;
  }
}

Flow FlowSolver::solve(VertexId s, VertexId t) const { return solve(s, t, {}); }

Flow FlowSolver::solve(VertexId s, VertexId t,
                       const std::vector<CapacityOverride>& overrides) const {
  if (s >= vertex_count_ || t >= vertex_count_)
    throw Error(ErrorCode::Argument, "flow terminal out of range");
  if (s == t) throw Error(ErrorCode::Argument, "flow source equals sink");

  const std::size_t m = base_capacity_.size();
  std::vector<std::uint64_t> res(2 * m);
  for (std::size_t e = 0; e < m; ++e) {
    res[2 * e] = base_capacity_[e].raw;
    res[2 * e + 1] = 0;
  }
  for (const auto& [e, c] : overrides) {
    if (e >= m) throw Error(ErrorCode::Argument, "capacity override out of range");
    res[2 * static_cast<std::size_t>(e)] = c.raw;
  }

  std::vector<std::uint32_t> level(vertex_count_), it(vertex_count_);
  std::vector<VertexId> queue(vertex_count_);

  auto bfs = [&]() {
    std::fill(level.begin(), level.end(), kUnreached);
    std::size_t head = 0, tail = 0;
    level[s] = 0;
    queue[tail++] = s;
    while (head < tail) {
      VertexId u = queue[head++];
      for (std::uint32_t i = adj_start_[u]; i < adj_start_[u + 1]; ++i) {
        std::uint32_t a = adj_arcs_[i];
        VertexId v = arc_target_[a];
        if (res[a] == 0 || level[v] != kUnreached) continue;
        level[v] = level[u] + 1;
        queue[tail++] = v;
      }
    }
    return level[t] != kUnreached;
  };

  auto dfs = [&](auto&& self, VertexId u, std::uint64_t limit) -> std::uint64_t {
    if (u == t) return limit;
    for (; it[u] < adj_start_[u + 1]; ++it[u]) {
      std::uint32_t a = adj_arcs_[it[u]];
      VertexId v = arc_target_[a];
      if (res[a] == 0 || level[v] != level[u] + 1) continue;
      std::uint64_t pushed = self(self, v, res_min(limit, res[a]));
      if (pushed == 0) continue;
      if (pushed == kInfRes) throw Error(ErrorCode::Internal, "unbounded flow value");
      res[a] = res_sub(res[a], pushed);
      res[a ^ 1] = res_add(res[a ^ 1], pushed);
      return pushed;
    }
    return 0;
  };

  while (bfs()) {
    for (VertexId v = 0; v < vertex_count_; ++v) it[v] = adj_start_[v];
    while (dfs(dfs, s, kInfRes) != 0) {
    }
  }

  Flow flow;
  flow.edge_flow.resize(m);
  for (std::size_t e = 0; e < m; ++e) flow.edge_flow[e] = res[2 * e + 1];
  std::uint64_t out = 0, in = 0;
  for (std::size_t e = 0; e < m; ++e) {
    if (arc_target_[2 * e + 1] == s) out += flow.edge_flow[e];
    if (arc_target_[2 * e] == s) in += flow.edge_flow[e];
  }
  flow.value = out - in;
  return flow;
}

Flow max_flow(const StaticFlowNetwork& net, VertexId s, VertexId t) {
  return FlowSolver(net).solve(s, t);
}

namespace {

std::vector<char> forward_closure(const StaticFlowNetwork& net, VertexId s) {
  std::vector<char> seen(net.vertex_count(), 0);
  std::vector<VertexId> stack{s};
  seen[s] = 1;
  while (!stack.empty()) {
    VertexId u = stack.back();
    stack.pop_back();
    for (EdgeId e : net.out_edges(u)) {
      VertexId v = net.edge(e).dst;
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace

bool reach(const StaticFlowNetwork& net, VertexId s, VertexId t) {
  if (s >= net.vertex_count() || t >= net.vertex_count())
    throw Error(ErrorCode::Argument, "vertex out of range");
  return forward_closure(net, s)[t];
}

bool Reachability::reach(VertexId s, VertexId t) {
  if (s >= net_.vertex_count() || t >= net_.vertex_count())
    throw Error(ErrorCode::Argument, "vertex out of range");
  auto it = visited_.find(s);
  if (it == visited_.end()) it = visited_.emplace(s, forward_closure(net_, s)).first;
  return it->second[t] != 0;
}

TemporalMaxflowResult max_temporal_flow(const TemporalFlowNetwork& tfn, VertexId s, VertexId t,
                                        const PipelineOptions& opts) {
  if (s >= tfn.vertex_count() || t >= tfn.vertex_count())
    throw Error(ErrorCode::Argument, "terminal out of range");
  if (s == t) throw Error(ErrorCode::Argument, "source equals sink");

  TemporalMaxflowResult result;
  if (opts.use_reduce) {
    ReduceResult red = reduce(tfn, {s}, {t});
    result.ten = transform(red.net);
  } else {
    result.ten = transform(tfn);
  }

  VertexId from = result.ten.earliest[s];
  VertexId to = result.ten.latest[t];
  if (from == kNoVertex || to == kNoVertex) {
    result.flow.edge_flow.assign(result.ten.net.edge_count(), 0);
    return result;
  }

  if (opts.use_compress) {
    result.ten = compress(result.ten, {from, to});
    from = result.ten.earliest[s];
    to = result.ten.latest[t];
  }

  result.flow = max_flow(result.ten.net, from, to);
  result.value = result.flow.value;
  return result;
}

NaiveFlowResult naive_temporal_max_flow(const TemporalFlowNetwork& tfn, VertexId s, VertexId t) {
  if (s >= tfn.vertex_count() || t >= tfn.vertex_count())
    throw Error(ErrorCode::Argument, "terminal out of range");
  if (s == t) throw Error(ErrorCode::Argument, "source equals sink");

  const std::size_t m = tfn.edge_count();
  NaiveFlowResult result;
  result.edge_flow.assign(m, 0);

  struct State {
    VertexId vertex;
    std::int64_t after;  // minimum timestamp the next arc may carry
    std::int32_t parent;
    EdgeId via;
    bool forward;
  };

  for (;;) {
    // shortest timestamp-monotone augmenting path; a vertex is re-entered
    // only with a strictly smaller time bound, which also keeps paths simple
    std::vector<std::int64_t> best(tfn.vertex_count(), std::numeric_limits<std::int64_t>::max());
    std::vector<State> states;
    states.push_back({s, 0, -1, kNoEdge, true});
    best[s] = 0;
    std::int32_t found = -1;

    for (std::size_t head = 0; head < states.size() && found < 0; ++head) {
      const State cur = states[head];
      for (EdgeId e = 0; e < m; ++e) {
        const TemporalEdge& ed = tfn.edge(e);
        std::int64_t after = cur.after;
        if (ed.src == cur.vertex && ed.timestamp >= after &&
            result.edge_flow[e] < ed.capacity) {
          if (ed.timestamp < best[ed.dst]) {
            best[ed.dst] = ed.timestamp;
            states.push_back({ed.dst, ed.timestamp, static_cast<std::int32_t>(head), e, true});
            if (ed.dst == t) {
              found = static_cast<std::int32_t>(states.size()) - 1;
              break;
            }
          }
        }
        if (ed.dst == cur.vertex && ed.timestamp >= after && result.edge_flow[e] > 0) {
          if (ed.timestamp < best[ed.src]) {
            best[ed.src] = ed.timestamp;
            states.push_back({ed.src, ed.timestamp, static_cast<std::int32_t>(head), e, false});
            if (ed.src == t) {
              found = static_cast<std::int32_t>(states.size()) - 1;
              break;
            }
          }
        }
      }
    }
    if (found < 0) break;

    std::uint64_t bottleneck = std::numeric_limits<std::uint64_t>::max();
    for (std::int32_t i = found; states[i].parent >= 0; i = states[i].parent) {
      const State& st = states[i];
      const TemporalEdge& ed = tfn.edge(st.via);
      std::uint64_t slack = st.forward ? ed.capacity - result.edge_flow[st.via]
                                       : result.edge_flow[st.via];
      bottleneck = std::min(bottleneck, slack);
    }
    for (std::int32_t i = found; states[i].parent >= 0; i = states[i].parent) {
      const State& st = states[i];
      if (st.forward)
        result.edge_flow[st.via] += bottleneck;
      else
        result.edge_flow[st.via] -= bottleneck;
    }
    result.value += bottleneck;
  }
  return result;
}

}  // namespace stdf
