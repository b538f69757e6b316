#include "stdf/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>

namespace stdf::oracle {

namespace {

std::string edge_text(const TemporalFlowNetwork& tfn, EdgeId e) {
  const TemporalEdge& ed = tfn.edge(e);
  std::ostringstream out;
  out << "(" << tfn.label_of(ed.src) << "," << tfn.label_of(ed.dst) << ")@" << ed.timestamp;
  return out.str();
}

std::vector<VertexId> vertices_by_label(const TemporalFlowNetwork& tfn) {
  std::vector<VertexId> order(tfn.vertex_count());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](VertexId a, VertexId b) { return tfn.label_of(a) < tfn.label_of(b); });
  return order;
}

}  // namespace

FeasibilityReport check_temporal_feasibility(const TemporalFlowNetwork& tfn,
                                             const TemporalFlowAssignment& assignment,
                                             VertexId s, VertexId t) {
  if (assignment.edge_flow.size() != tfn.edge_count())
    throw Error(ErrorCode::Argument, "assignment length does not match the edge count");
  if (s >= tfn.vertex_count() || t >= tfn.vertex_count() || s == t)
    throw Error(ErrorCode::Argument, "bad terminal pair");

  FeasibilityReport report;
  for (EdgeId e = 0; e < tfn.edge_count(); ++e) {
    if (assignment.edge_flow[e] <= tfn.edge(e).capacity) continue;
    report.feasible = false;
    report.kind = ViolationKind::Capacity;
    report.vertex = tfn.label_of(tfn.edge(e).src);
    report.timestamp = tfn.edge(e).timestamp;
    std::ostringstream out;
    out << "edge " << edge_text(tfn, e) << " carries " << assignment.edge_flow[e]
        << " over capacity " << tfn.edge(e).capacity;
    report.detail = out.str();
    return report;
  }

  for (VertexId v : vertices_by_label(tfn)) {
    if (v == s || v == t) continue;
    std::map<std::int64_t, std::pair<std::uint64_t, std::uint64_t>> events;  // stamp -> (in, out)
    for (EdgeId e : tfn.in_edges(v)) events[tfn.edge(e).timestamp].first += assignment.edge_flow[e];
    for (EdgeId e : tfn.out_edges(v))
      events[tfn.edge(e).timestamp].second += assignment.edge_flow[e];
    std::uint64_t in = 0, out = 0;
    for (const auto& [stamp, io] : events) {
      in += io.first;
      out += io.second;
      if (out <= in) continue;
      report.feasible = false;
      report.kind = ViolationKind::Cumulative;
      report.vertex = tfn.label_of(v);
      report.timestamp = stamp;
      std::ostringstream text;
      text << "vertex " << tfn.label_of(v) << " has sent " << out << " but received only " << in
           << " by time " << stamp;
      report.detail = text.str();
      return report;
    }
    if (in != out) {
      report.feasible = false;
      report.kind = ViolationKind::Conservation;
      report.vertex = tfn.label_of(v);
      report.timestamp = events.empty() ? 0 : events.rbegin()->first;
      std::ostringstream text;
      text << "vertex " << tfn.label_of(v) << " receives " << in << " but sends " << out;
      report.detail = text.str();
      return report;
    }
  }
  return report;
}

std::uint64_t assignment_value(const TemporalFlowNetwork& tfn,
                               const TemporalFlowAssignment& assignment, VertexId s) {
  if (assignment.edge_flow.size() != tfn.edge_count())
    throw Error(ErrorCode::Argument, "assignment length does not match the edge count");
  std::uint64_t out = 0, in = 0;
  for (EdgeId e : tfn.out_edges(s)) out += assignment.edge_flow[e];
  for (EdgeId e : tfn.in_edges(s)) in += assignment.edge_flow[e];
  return out - in;
}

TemporalFlowAssignment project_flow(const TimeExpandedNetwork& ten, const Flow& flow) {
  if (ten.compressed)
    throw Error(ErrorCode::Argument, "cannot project from a compressed expanded network");
  if (flow.edge_flow.size() != ten.net.edge_count())
    throw Error(ErrorCode::Argument, "flow length does not match the expanded network");
  TemporalFlowAssignment assignment;
  assignment.edge_flow.reserve(ten.to_horizontal.size());
  for (EdgeId horizontal : ten.to_horizontal)
    assignment.edge_flow.push_back(flow.edge_flow[horizontal]);
  return assignment;
}

LiftResult lift_flow(const TemporalFlowNetwork& tfn, const TemporalFlowAssignment& assignment,
                     VertexId s, VertexId t) {
  FeasibilityReport report = check_temporal_feasibility(tfn, assignment, s, t);
  if (!report.feasible)
    throw Error(ErrorCode::Validation, "assignment is not a temporal flow: " + report.detail);

  LiftResult result;
  result.ten = transform(tfn);
  const TimeExpandedNetwork& ten = result.ten;
  result.flow.edge_flow.assign(ten.net.edge_count(), 0);
  for (EdgeId e = 0; e < tfn.edge_count(); ++e)
    result.flow.edge_flow[ten.to_horizontal[e]] = assignment.edge_flow[e];

  // vertical edge from each copy to its successor, in expansion order
  std::map<VertexId, EdgeId> vertical_from;
  for (EdgeId e = 0; e < ten.net.edge_count(); ++e)
    if (ten.from_horizontal[e] == kNoEdge) vertical_from[ten.net.edge(e).src] = e;

  for (VertexId v = 0; v < tfn.vertex_count(); ++v) {
    const auto& copies = ten.copies[v];
    if (copies.size() < 2) continue;
    std::vector<std::int64_t> net_in(copies.size(), 0);
    for (std::size_t i = 0; i < copies.size(); ++i) {
      for (EdgeId e : tfn.in_edges(v))
        if (tfn.edge(e).timestamp == ten.stamp[copies[i]])
          net_in[i] += static_cast<std::int64_t>(assignment.edge_flow[e]);
      for (EdgeId e : tfn.out_edges(v))
        if (tfn.edge(e).timestamp == ten.stamp[copies[i]])
          net_in[i] -= static_cast<std::int64_t>(assignment.edge_flow[e]);
    }
    for (std::size_t i = 0; i + 1 < copies.size(); ++i) {
      std::int64_t carried;
      if (v == s) {
        // the source chain carries what still has to be emitted later
        carried = 0;
        for (std::size_t j = i + 1; j < copies.size(); ++j) carried -= net_in[j];
      } else {
        carried = 0;
        for (std::size_t j = 0; j <= i; ++j) carried += net_in[j];
      }
      if (carried < 0)
        throw Error(ErrorCode::Validation,
                    "assignment cannot be carried forward in time at vertex " +
                        std::to_string(tfn.label_of(v)));
      result.flow.edge_flow[vertical_from.at(copies[i])] = static_cast<std::uint64_t>(carried);
    }
  }
  result.flow.value = assignment_value(tfn, assignment, s);
  return result;
}

BruteforceResult stdf_bruteforce(const TemporalFlowNetwork& tfn, const Query& q) {
  validate_query(tfn, q);
  const std::size_t n1 = q.sources.size(), n2 = q.sinks.size();
  const std::size_t n = n1 + n2;
  if (n > 12)
    throw Error(ErrorCode::Budget, "reference enumeration is capped at 12 terminals");
  if (q.k < 1) throw Error(ErrorCode::Argument, "subset size bound must be at least 1");
  if (q.k > n)
    throw Error(ErrorCode::Infeasible, "subset size bound exceeds the query terminal count");

  TimeExpandedNetwork ten = transform(tfn);
  StaticFlowNetwork ext = ten.net;
  const VertexId super_s = ext.add_vertex();
  const VertexId super_t = ext.add_vertex();

  std::vector<VertexId> sources = q.sources, sinks = q.sinks;
  std::sort(sources.begin(), sources.end(),
            [&](VertexId a, VertexId b) { return tfn.label_of(a) < tfn.label_of(b); });
  std::sort(sinks.begin(), sinks.end(),
            [&](VertexId a, VertexId b) { return tfn.label_of(a) < tfn.label_of(b); });

  std::vector<EdgeId> src_edge(n1, kNoEdge), sink_edge(n2, kNoEdge);
  for (std::size_t i = 0; i < n1; ++i)
    if (ten.earliest[sources[i]] != kNoVertex)
      src_edge[i] = ext.add_edge(super_s, ten.earliest[sources[i]], Capacity::finite(0));
  for (std::size_t j = 0; j < n2; ++j)
    if (ten.latest[sinks[j]] != kNoVertex)
      sink_edge[j] = ext.add_edge(ten.latest[sinks[j]], super_t, Capacity::finite(0));
  FlowSolver solver(ext);

  auto evaluate = [&](std::uint64_t mask) -> std::uint64_t {
    std::vector<CapacityOverride> enable;
    bool usable_src = false, usable_sink = false;
    for (std::size_t i = 0; i < n1; ++i)
      if ((mask >> i & 1) && src_edge[i] != kNoEdge) {
        enable.emplace_back(src_edge[i], Capacity::infinite());
        usable_src = true;
      }
    for (std::size_t j = 0; j < n2; ++j)
      if ((mask >> (n1 + j) & 1) && sink_edge[j] != kNoEdge) {
        enable.emplace_back(sink_edge[j], Capacity::infinite());
        usable_sink = true;
      }
    if (!usable_src || !usable_sink) return 0;
    return solver.solve(super_s, super_t, enable).value;
  };

  auto witness_of = [&](std::uint64_t mask) {
    Witness w;
    for (std::size_t i = 0; i < n1; ++i)
      if (mask >> i & 1) w.sources.push_back(tfn.label_of(sources[i]));
    for (std::size_t j = 0; j < n2; ++j)
      if (mask >> (n1 + j) & 1) w.sinks.push_back(tfn.label_of(sinks[j]));
    return w;
  };

  std::vector<std::uint64_t> best_value(n + 1, 0);
  std::vector<Witness> best_witness(n + 1);
  std::vector<char> seeded(n + 1, 0);
  BruteforceResult result;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    result.subset_evaluations++;
    const std::size_t c = static_cast<std::size_t>(std::popcount(mask));
    const std::uint64_t value = evaluate(mask);
    if (seeded[c] && value < best_value[c]) continue;
    Witness w = witness_of(mask);
    if (!seeded[c] || value > best_value[c] ||
        (value == best_value[c] && lex_less(w, best_witness[c]))) {
      seeded[c] = 1;
      best_value[c] = value;
      best_witness[c] = std::move(w);
    }
  }

  std::size_t best = static_cast<std::size_t>(q.k);
  for (std::size_t c = best + 1; c <= n; ++c) {
    const unsigned __int128 lhs = static_cast<unsigned __int128>(best_value[c]) * best;
    const unsigned __int128 rhs = static_cast<unsigned __int128>(best_value[best]) * c;
    if (lhs > rhs) best = c;
  }
  result.answer.witness = best_witness[best];
  result.answer.value = best_value[best];
  result.answer.density = {best_value[best], best};
  result.answer.degenerate = result.answer.value == 0;
  return result;
}

}  // namespace stdf::oracle
