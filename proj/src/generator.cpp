#include "stdf/generator.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace stdf {

namespace {

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

}  // namespace

TemporalFlowNetwork random_tfn(std::mt19937_64& rng, const RandomTfnOptions& opt) {
  if (opt.min_vertices < 2 || opt.max_vertices < opt.min_vertices)
    throw Error(ErrorCode::Argument, "bad vertex count range");
  const std::uint32_t n =
      static_cast<std::uint32_t>(draw(rng, opt.min_vertices, opt.max_vertices));

  TemporalFlowNetwork tfn;
  for (std::uint32_t v = 0; v < n; ++v) tfn.add_vertex(static_cast<Label>(v));

  std::vector<std::pair<VertexId, VertexId>> slots;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = 0; b < n; ++b)
      if (a != b) slots.emplace_back(a, b);
  std::shuffle(slots.begin(), slots.end(), rng);
  const std::size_t m = std::min<std::size_t>(opt.max_edges, slots.size());

  std::vector<std::int64_t> stamps(m);
  if (opt.distinct_timestamps) {
    for (std::size_t e = 0; e < m; ++e) stamps[e] = static_cast<std::int64_t>(e) + 1;
    std::shuffle(stamps.begin(), stamps.end(), rng);
  } else {
    for (std::size_t e = 0; e < m; ++e)
      stamps[e] = static_cast<std::int64_t>(draw(rng, 1, std::max<std::size_t>(m / 2, 1)));
  }

  for (std::size_t e = 0; e < m; ++e)
    tfn.add_edge(slots[e].first, slots[e].second, draw(rng, 1, opt.max_capacity), stamps[e]);
  return tfn;
}

TemporalFlowNetwork layered_tfn(std::mt19937_64& rng, const LayeredTfnOptions& opt) {
  if (opt.layers < 2 || opt.width < 1)
    throw Error(ErrorCode::Argument, "need at least two layers and one vertex per layer");

  TemporalFlowNetwork tfn;
  const std::uint32_t n = opt.layers * opt.width;
  for (std::uint32_t v = 0; v < n; ++v) tfn.add_vertex(static_cast<Label>(v));
  auto at = [&](std::uint32_t layer, std::uint32_t row) { return layer * opt.width + row; };

  std::set<std::pair<VertexId, VertexId>> used;
  std::uint32_t added = 0;
  std::int64_t next_stamp_bump = 0;
  for (std::uint32_t attempt = 0; attempt < opt.edges * 20 && added < opt.edges; ++attempt) {
    const std::uint32_t layer = static_cast<std::uint32_t>(draw(rng, 0, opt.layers - 2));
    std::uint32_t target_layer = layer + 1;
    if (opt.layers > 2 && draw(rng, 1, 100) <= opt.skip_edge_percent)
      target_layer = static_cast<std::uint32_t>(draw(rng, layer + 1, opt.layers - 1));
    const VertexId a = at(layer, static_cast<std::uint32_t>(draw(rng, 0, opt.width - 1)));
    const VertexId b = at(target_layer, static_cast<std::uint32_t>(draw(rng, 0, opt.width - 1)));
    if (a == b || !used.emplace(a, b).second) continue;
    // stamps grow with the tail's layer so downstream hops stay usable
    const std::int64_t stamp = static_cast<std::int64_t>(layer) * (opt.edges + 1) + 1 +
                               (next_stamp_bump++ % opt.edges);
    tfn.add_edge(a, b, draw(rng, 1, opt.max_capacity), stamp);
    ++added;
  }
  return tfn;
}

std::optional<Query> random_query(std::mt19937_64& rng, const TemporalFlowNetwork& tfn,
                                  std::uint32_t n_sources, std::uint32_t n_sinks,
                                  std::uint64_t k) {
  std::vector<VertexId> senders, receivers;
  for (VertexId v = 0; v < tfn.vertex_count(); ++v) {
    if (!tfn.out_edges(v).empty()) senders.push_back(v);
    if (!tfn.in_edges(v).empty()) receivers.push_back(v);
  }
  std::shuffle(senders.begin(), senders.end(), rng);

  Query q;
  std::set<VertexId> taken;
  for (VertexId v : senders) {
    if (q.sources.size() == n_sources) break;
    q.sources.push_back(v);
    taken.insert(v);
  }
  if (q.sources.size() < n_sources) return std::nullopt;

  std::shuffle(receivers.begin(), receivers.end(), rng);
  for (VertexId v : receivers) {
    if (q.sinks.size() == n_sinks) break;
    if (taken.count(v)) continue;
    q.sinks.push_back(v);
  }
  if (q.sinks.size() < n_sinks) return std::nullopt;
  if (k < 1 || k > n_sources + n_sinks) return std::nullopt;
  q.k = k;
  return q;
}

bool has_rdv(const TemporalFlowNetwork& tfn) {
  for (VertexId v = 0; v < tfn.vertex_count(); ++v) {
    std::set<std::int64_t> in, out;
    for (EdgeId e : tfn.in_edges(v)) in.insert(tfn.edge(e).timestamp);
    for (EdgeId e : tfn.out_edges(v)) out.insert(tfn.edge(e).timestamp);
    // t1 < t3 < t2 < t4 with arrivals t1,t2 and departures t3,t4
    for (std::int64_t t3 : out) {
      auto t1 = in.lower_bound(t3);
      if (t1 == in.begin()) continue;
      auto t2 = in.upper_bound(t3);
      if (t2 == in.end()) continue;
      if (out.upper_bound(*t2) != out.end()) return true;
    }
  }
  return false;
}

}  // namespace stdf
