#include "stdf/time_expanded.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <ostream>
#include <utility>

namespace stdf {

const char* role_name(VertexRole r) {
  switch (r) {
    case VertexRole::FlowOut: return "flow-out";
    case VertexRole::FlowIn: return "flow-in";
    case VertexRole::FlowCrossing: return "flow-crossing";
  }
  return "?";
}

VertexId TimeExpandedNetwork::copy_at(VertexId original, std::int64_t timestamp) const {
  if (original >= copies.size()) return kNoVertex;
  for (VertexId c : copies[original])
    if (stamp[c] == timestamp) return c;
  return kNoVertex;
}

ReduceResult reduce(const TemporalFlowNetwork& tfn, const std::vector<VertexId>& S,
                    const std::vector<VertexId>& T) {
  const VertexId n = tfn.vertex_count();
  const std::size_t m = tfn.edge_count();
  std::vector<char> is_source(n, 0), is_sink(n, 0);
  for (VertexId v : S) is_source[v] = 1;
  for (VertexId v : T) is_sink[v] = 1;

  std::vector<char> edge_alive(m, 1), vertex_alive(n, 1);

  bool changed = true;
  while (changed) {
    changed = false;

    // stamp extremes over the edges surviving the previous pass
    constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
    constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();
    std::vector<std::int64_t> min_in(n, kMax), max_out(n, kMin);
    for (std::size_t e = 0; e < m; ++e) {
      if (!edge_alive[e]) continue;
      const TemporalEdge& ed = tfn.edge(e);
      min_in[ed.dst] = std::min(min_in[ed.dst], ed.timestamp);
      max_out[ed.src] = std::max(max_out[ed.src], ed.timestamp);
    }

    for (std::size_t e = 0; e < m; ++e) {
      if (!edge_alive[e]) continue;
      const TemporalEdge& ed = tfn.edge(e);
      if (is_source[ed.src] || is_sink[ed.dst]) continue;
      const bool departs_too_early = ed.timestamp < min_in[ed.src];  // vacuous when no arrivals
      const bool arrives_too_late = ed.timestamp > max_out[ed.dst];  // vacuous when no departures
      if (departs_too_early || arrives_too_late) {
        edge_alive[e] = 0;
        changed = true;
      }
    }

    std::vector<std::uint32_t> indeg(n, 0), outdeg(n, 0);
    for (std::size_t e = 0; e < m; ++e) {
      if (!edge_alive[e]) continue;
      outdeg[tfn.edge(e).src]++;
      indeg[tfn.edge(e).dst]++;
    }
    for (VertexId v = 0; v < n; ++v) {
      if (!vertex_alive[v]) continue;
      const bool inlet = indeg[v] == 0 && !is_source[v];
      const bool outlet = outdeg[v] == 0 && !is_sink[v];
      if (inlet || outlet) {
        vertex_alive[v] = 0;
        changed = true;
        for (std::size_t e = 0; e < m; ++e) {
          if (!edge_alive[e]) continue;
          if (tfn.edge(e).src == v || tfn.edge(e).dst == v) edge_alive[e] = 0;
        }
      }
    }
  }

  ReduceResult result;
  for (VertexId v = 0; v < n; ++v) result.net.add_vertex(tfn.label_of(v));
  for (std::size_t e = 0; e < m; ++e) {
    if (!edge_alive[e]) continue;
    const TemporalEdge& ed = tfn.edge(e);
    result.net.add_edge(ed.src, ed.dst, ed.capacity, ed.timestamp);
    result.source_edge.push_back(static_cast<EdgeId>(e));
  }
  return result;
}

TimeExpandedNetwork transform(const TemporalFlowNetwork& tfn) {
  TimeExpandedNetwork ten;
  const VertexId n = tfn.vertex_count();
  ten.original_vertex_count = n;

  std::vector<std::vector<std::int64_t>> stamps(n);
  for (const TemporalEdge& e : tfn.edges()) {
    stamps[e.src].push_back(e.timestamp);
    stamps[e.dst].push_back(e.timestamp);
  }

  ten.copies.resize(n);
  ten.earliest.assign(n, kNoVertex);
  ten.latest.assign(n, kNoVertex);
  for (VertexId v = 0; v < n; ++v) {
    auto& ts = stamps[v];
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (std::int64_t t : ts) {
      VertexId c = ten.net.add_vertex();
      ten.owner.push_back(v);
      ten.stamp.push_back(t);
      ten.copies[v].push_back(c);
    }
    if (!ts.empty()) {
      ten.earliest[v] = ten.copies[v].front();
      ten.latest[v] = ten.copies[v].back();
    }
  }

  for (VertexId v = 0; v < n; ++v)
    for (std::size_t i = 0; i + 1 < ten.copies[v].size(); ++i)
      ten.net.add_edge(ten.copies[v][i], ten.copies[v][i + 1], Capacity::infinite());

  ten.to_horizontal.resize(tfn.edge_count());
  for (EdgeId e = 0; e < tfn.edge_count(); ++e) {
    const TemporalEdge& ed = tfn.edge(e);
    VertexId a = ten.copy_at(ed.src, ed.timestamp);
    VertexId b = ten.copy_at(ed.dst, ed.timestamp);
    ten.to_horizontal[e] = ten.net.add_edge(a, b, Capacity::finite(ed.capacity));
  }
  ten.from_horizontal.assign(ten.net.edge_count(), kNoEdge);
  for (EdgeId e = 0; e < tfn.edge_count(); ++e) ten.from_horizontal[ten.to_horizontal[e]] = e;
  return ten;
}

VertexRole classify(const StaticFlowNetwork& net, VertexId v) {
  const auto& in = net.in_edges(v);
  const auto& out = net.out_edges(v);
  if (in.empty() || (in.size() == 1 && net.edge(in[0]).capacity.is_infinite()))
    return VertexRole::FlowOut;
  if (out.empty() || (out.size() == 1 && net.edge(out[0]).capacity.is_infinite()))
    return VertexRole::FlowIn;
  return VertexRole::FlowCrossing;
}

VcpResult vcp(const StaticFlowNetwork& net, VertexId u1, VertexId u2) {
  if (u1 >= net.vertex_count() || u2 >= net.vertex_count())
    throw Error(ErrorCode::Argument, "vertex out of range");
  if (u1 == u2) throw Error(ErrorCode::Argument, "cannot merge a vertex with itself");
  bool adjacent = false;
  for (EdgeId e : net.out_edges(u1))
    if (net.edge(e).dst == u2) adjacent = true;
  if (!adjacent) throw Error(ErrorCode::Argument, "vertices are not adjacent");

  VcpResult r;
  r.remap.assign(net.vertex_count(), kNoVertex);
  VertexId next = 0;
  for (VertexId v = 0; v < net.vertex_count(); ++v)
    if (v != u1 && v != u2) r.remap[v] = next++;
  r.super_vertex = next;
  r.remap[u1] = r.remap[u2] = r.super_vertex;
  r.net.add_vertices(next + 1);

  // keep first-occurrence edge order, merge parallels as they appear
  std::vector<StaticEdge> rebuilt;
  std::map<std::pair<VertexId, VertexId>, std::size_t> at;
  for (const StaticEdge& ed : net.edges()) {
    VertexId a = r.remap[ed.src], b = r.remap[ed.dst];
    if (a == b) continue;  // the contracted pair's own edges
    auto key = std::make_pair(a, b);
    auto it = at.find(key);
    if (it == at.end()) {
      at.emplace(key, rebuilt.size());
      rebuilt.push_back({a, b, ed.capacity});
    } else {
      rebuilt[it->second].capacity = saturating_add(rebuilt[it->second].capacity, ed.capacity);
    }
  }
  for (const StaticEdge& ed : rebuilt) r.net.add_edge(ed.src, ed.dst, ed.capacity);
  return r;
}

namespace {

bool merge_allowed(VertexRole c1, VertexRole c2) {
  using R = VertexRole;
  return (c1 == R::FlowIn && c2 == R::FlowIn) || (c1 == R::FlowOut && c2 == R::FlowOut) ||
         (c1 == R::FlowIn && c2 == R::FlowOut) || (c1 == R::FlowIn && c2 == R::FlowCrossing) ||
         (c1 == R::FlowCrossing && c2 == R::FlowOut);
}

}  // namespace

TimeExpandedNetwork compress(const TimeExpandedNetwork& ten,
                             const std::vector<VertexId>& protected_copies) {
  TimeExpandedNetwork cur = ten;
  std::vector<char> prot(cur.net.vertex_count(), 0);
  for (VertexId v : protected_copies) {
    if (v >= cur.net.vertex_count())
      throw Error(ErrorCode::Argument, "protected copy out of range");
    prot[v] = 1;
  }

  bool merged = true;
  while (merged) {
    merged = false;
    std::vector<VertexRole> role(cur.net.vertex_count());
    for (VertexId v = 0; v < cur.net.vertex_count(); ++v) role[v] = classify(cur.net, v);

    for (VertexId u1 = 0; u1 < cur.net.vertex_count() && !merged; ++u1) {
      if (prot[u1]) continue;
      for (EdgeId e : cur.net.out_edges(u1)) {
        VertexId u2 = cur.net.edge(e).dst;
        if (prot[u2] || !merge_allowed(role[u1], role[u2])) continue;

        VcpResult r = vcp(cur.net, u1, u2);
        const VertexId nv = r.net.vertex_count();

        std::vector<VertexId> owner(nv, kNoVertex);
        std::vector<std::int64_t> stamp(nv, 0);
        std::vector<char> nprot(nv, 0);
        for (VertexId v = 0; v < cur.net.vertex_count(); ++v) {
          if (v == u1 || v == u2) continue;
          owner[r.remap[v]] = cur.owner[v];
          stamp[r.remap[v]] = cur.stamp[v];
          nprot[r.remap[v]] = prot[v];
        }
        auto track = [&](VertexId c) {
          if (c == kNoVertex || c == u1 || c == u2) return kNoVertex;
          return r.remap[c];
        };
        for (VertexId v = 0; v < cur.original_vertex_count; ++v) {
          cur.earliest[v] = track(cur.earliest[v]);
          cur.latest[v] = track(cur.latest[v]);
        }
        cur.net = std::move(r.net);
        cur.owner = std::move(owner);
        cur.stamp = std::move(stamp);
        prot = std::move(nprot);
        merged = true;
        break;
      }
    }
  }

  cur.copies.assign(cur.original_vertex_count, {});
  cur.to_horizontal.clear();
  cur.from_horizontal.clear();
  cur.compressed = true;
  return cur;
}

bool is_dag(const StaticFlowNetwork& net) {
  const VertexId n = net.vertex_count();
  std::vector<std::uint32_t> indeg(n, 0);
  for (const StaticEdge& e : net.edges()) indeg[e.dst]++;
  std::vector<VertexId> order;
  order.reserve(n);
  for (VertexId v = 0; v < n; ++v)
    if (indeg[v] == 0) order.push_back(v);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (EdgeId e : net.out_edges(order[i]))
      if (--indeg[net.edge(e).dst] == 0) order.push_back(net.edge(e).dst);
  return order.size() == n;
}

void write_expanded_csv(const TimeExpandedNetwork& ten, std::ostream& out) {
  out << "src,dst,capacity\n";
  for (const StaticEdge& e : ten.net.edges())
    out << e.src << ',' << e.dst << ',' << to_string(e.capacity) << '\n';
}

}  // namespace stdf
