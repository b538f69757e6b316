#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "stdf/densest.hpp"
#include "stdf/generator.hpp"
#include "stdf/oracle.hpp"

using namespace stdf;

namespace {

oracle::TemporalFlowAssignment zero_assignment(const TemporalFlowNetwork& tfn) {
  oracle::TemporalFlowAssignment a;
  a.edge_flow.assign(tfn.edge_count(), 0);
  return a;
}

// First vertex with an out edge and last vertex with an in edge.
bool pick_terminals(const TemporalFlowNetwork& tfn, VertexId& s, VertexId& t) {
  s = kNoVertex;
  t = kNoVertex;
  for (VertexId v = 0; v < tfn.vertex_count(); ++v)
    if (!tfn.out_edges(v).empty()) {
      s = v;
      break;
    }
  for (VertexId v = tfn.vertex_count(); v-- > 0;)
    if (!tfn.in_edges(v).empty() && v != s) {
      t = v;
      break;
    }
  return s != kNoVertex && t != kNoVertex;
}

}  // namespace

TEST_CASE("a hand-built temporal flow passes the feasibility check") {
  TemporalFlowNetwork tfn = fixtures::diamond();
  oracle::TemporalFlowAssignment a = zero_assignment(tfn);
  a.edge_flow[0] = 2;  // 0 -> 1 at time 1
  a.edge_flow[2] = 2;  // 1 -> 3 at time 3
  a.edge_flow[5] = 2;  // 3 -> 4 at time 5
  a.edge_flow[7] = 2;  // 4 -> 6 at time 6
  oracle::FeasibilityReport r =
      oracle::check_temporal_feasibility(tfn, a, tfn.vertex_of(0), tfn.vertex_of(6));
  CHECK(r.feasible);
  CHECK(r.kind == oracle::ViolationKind::None);
  CHECK(oracle::assignment_value(tfn, a, tfn.vertex_of(0)) == 2);

  CHECK(oracle::check_temporal_feasibility(tfn, zero_assignment(tfn), tfn.vertex_of(0),
                                           tfn.vertex_of(6))
            .feasible);
}

TEST_CASE("feasibility violations are reported with their location") {
  TemporalFlowNetwork tfn = fixtures::diamond();
  const VertexId s = tfn.vertex_of(0), t = tfn.vertex_of(6);

  oracle::TemporalFlowAssignment over = zero_assignment(tfn);
  over.edge_flow[5] = 3;  // 3 -> 4 has capacity 2
  oracle::FeasibilityReport rc = oracle::check_temporal_feasibility(tfn, over, s, t);
  CHECK(!rc.feasible);
  CHECK(rc.kind == oracle::ViolationKind::Capacity);
  CHECK(rc.detail.find("capacity") != std::string::npos);

  // Sending along 3 -> 5 at time 1 although vertex 3 receives only at 3 and 4.
  oracle::TemporalFlowAssignment misroute = zero_assignment(tfn);
  misroute.edge_flow[0] = 2;
  misroute.edge_flow[2] = 2;
  misroute.edge_flow[4] = 2;
  misroute.edge_flow[6] = 2;
  oracle::FeasibilityReport ru = oracle::check_temporal_feasibility(tfn, misroute, s, t);
  CHECK(!ru.feasible);
  CHECK(ru.kind == oracle::ViolationKind::Cumulative);
  CHECK(ru.vertex == 3);
  CHECK(ru.timestamp == 1);

  oracle::TemporalFlowAssignment stuck = zero_assignment(tfn);
  stuck.edge_flow[0] = 2;
  oracle::FeasibilityReport rx = oracle::check_temporal_feasibility(tfn, stuck, s, t);
  CHECK(!rx.feasible);
  CHECK(rx.kind == oracle::ViolationKind::Conservation);
  CHECK(rx.vertex == 1);

  oracle::TemporalFlowAssignment both = over;
  both.edge_flow[4] = 2;
  CHECK(oracle::check_temporal_feasibility(tfn, both, s, t).kind ==
        oracle::ViolationKind::Capacity);

  oracle::TemporalFlowAssignment bad;
  bad.edge_flow.assign(3, 0);
  CHECK_THROWS_AS(oracle::check_temporal_feasibility(tfn, bad, s, t), Error);
  CHECK_THROWS_AS(oracle::check_temporal_feasibility(tfn, zero_assignment(tfn), s, s), Error);
}

TEST_CASE("the greedy baseline always produces a feasible assignment") {
  std::mt19937_64 rng(29);
  RandomTfnOptions opt;
  for (int iter = 0; iter < 30; ++iter) {
    TemporalFlowNetwork tfn = random_tfn(rng, opt);
    VertexId s, t;
    if (!pick_terminals(tfn, s, t)) continue;
    NaiveFlowResult naive = naive_temporal_max_flow(tfn, s, t);
    oracle::TemporalFlowAssignment a;
    a.edge_flow = naive.edge_flow;
    oracle::FeasibilityReport r = oracle::check_temporal_feasibility(tfn, a, s, t);
    CHECK(r.feasible);
    CHECK(oracle::assignment_value(tfn, a, s) == naive.value);
    CHECK(naive.value <= max_temporal_flow(tfn, s, t).value);
  }
}

TEST_CASE("projected flows are feasible and value-preserving") {
  std::mt19937_64 rng(31);
  RandomTfnOptions opt;
  int tested = 0;
  for (int iter = 0; iter < 40; ++iter) {
    TemporalFlowNetwork tfn = random_tfn(rng, opt);
    VertexId s, t;
    if (!pick_terminals(tfn, s, t)) continue;
    TimeExpandedNetwork ten = transform(tfn);
    if (ten.earliest[s] == kNoVertex || ten.latest[t] == kNoVertex) continue;
    ++tested;
    Flow flow = max_flow(ten.net, ten.earliest[s], ten.latest[t]);
    oracle::TemporalFlowAssignment a = oracle::project_flow(ten, flow);
    oracle::FeasibilityReport r = oracle::check_temporal_feasibility(tfn, a, s, t);
    CHECK(r.feasible);
    CHECK(oracle::assignment_value(tfn, a, s) == flow.value);

    // Lifting the projection back reproduces it exactly.
    oracle::LiftResult lifted = oracle::lift_flow(tfn, a, s, t);
    CHECK(lifted.flow.value == flow.value);
    oracle::TemporalFlowAssignment again = oracle::project_flow(lifted.ten, lifted.flow);
    CHECK(again.edge_flow == a.edge_flow);
  }
  CHECK(tested >= 20);
}

TEST_CASE("projection refuses a compressed network") {
  TemporalFlowNetwork tfn = fixtures::diamond();
  TemporalMaxflowResult r = max_temporal_flow(tfn, tfn.vertex_of(0), tfn.vertex_of(6));
  CHECK(r.ten.compressed);
  CHECK_THROWS_AS(oracle::project_flow(r.ten, r.flow), Error);
}

TEST_CASE("lifted flows respect the expanded network's structure") {
  TemporalFlowNetwork tfn = fixtures::diamond();
  const VertexId s = tfn.vertex_of(0), t = tfn.vertex_of(6);
  oracle::TemporalFlowAssignment a = zero_assignment(tfn);
  a.edge_flow[0] = 2;
  a.edge_flow[2] = 2;
  a.edge_flow[5] = 2;
  a.edge_flow[7] = 2;
  oracle::LiftResult lifted = oracle::lift_flow(tfn, a, s, t);
  CHECK(lifted.flow.value == 2);
  REQUIRE(lifted.flow.edge_flow.size() == lifted.ten.net.edge_count());
  std::vector<std::int64_t> balance(lifted.ten.net.vertex_count(), 0);
  for (EdgeId e = 0; e < lifted.ten.net.edge_count(); ++e) {
    const StaticEdge& ed = lifted.ten.net.edge(e);
    CHECK(!(ed.capacity < Capacity::finite(lifted.flow.edge_flow[e])));
    balance[ed.src] -= static_cast<std::int64_t>(lifted.flow.edge_flow[e]);
    balance[ed.dst] += static_cast<std::int64_t>(lifted.flow.edge_flow[e]);
  }
  for (VertexId v = 0; v < lifted.ten.net.vertex_count(); ++v) {
    if (lifted.ten.owner[v] == s || lifted.ten.owner[v] == t) continue;
    CHECK(balance[v] == 0);
  }

  oracle::TemporalFlowAssignment misroute = zero_assignment(tfn);
  misroute.edge_flow[4] = 2;
  misroute.edge_flow[6] = 2;
  misroute.edge_flow[0] = 2;
  misroute.edge_flow[2] = 2;
  try {
    oracle::lift_flow(tfn, misroute, s, t);
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Validation);
  }
}

TEST_CASE("the brute-force reference answers the two-cluster query") {
  TemporalFlowNetwork tfn = fixtures::two_cluster();
  Query q;
  for (Label l : {0, 1, 2, 3}) q.sources.push_back(tfn.vertex_of(l));
  for (Label l : {4, 5, 6, 7, 8}) q.sinks.push_back(tfn.vertex_of(l));
  q.k = 4;
  oracle::BruteforceResult r = oracle::stdf_bruteforce(tfn, q);
  CHECK(r.subset_evaluations == 512);
  CHECK(r.answer.value == 16);
  CHECK(r.answer.density.num == 16);
  CHECK(r.answer.density.den == 5);
  CHECK(r.answer.witness == Witness{{1, 3}, {5, 6, 8}});

  q.k = 20;
  CHECK_THROWS_AS(oracle::stdf_bruteforce(tfn, q), Error);
  q.k = 0;
  CHECK_THROWS_AS(oracle::stdf_bruteforce(tfn, q), Error);
}

TEST_CASE("the brute-force reference is capped at twelve terminals") {
  std::mt19937_64 rng(37);
  TemporalFlowNetwork tfn = layered_tfn(rng, {});
  Query q;
  for (VertexId v = 0; v < 13; ++v)
    (v < 7 ? q.sources : q.sinks).push_back(v);
  q.k = 1;
  try {
    oracle::stdf_bruteforce(tfn, q);
    FAIL("expected a budget error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Budget);
  }
}

TEST_CASE("the pipeline agrees with the brute-force reference everywhere") {
  std::mt19937_64 rng(41);
  RandomTfnOptions opt;
  opt.max_edges = 14;
  int tested = 0;
  for (int iter = 0; iter < 80 && tested < 40; ++iter) {
    TemporalFlowNetwork tfn = random_tfn(rng, opt);
    std::optional<Query> q = random_query(rng, tfn, 2, 2, 1 + iter % 3);
    if (!q) continue;
    ++tested;
    oracle::BruteforceResult ref = oracle::stdf_bruteforce(tfn, *q);
    QueryContext ctx(tfn, *q);
    EvalStats stats;
    ExactResult mine = stdf_exact(ctx, {}, stats);
    CHECK(mine.answer.value == ref.answer.value);
    CHECK(mine.answer.density.num == ref.answer.density.num);
    CHECK(mine.answer.density.den == ref.answer.density.den);
    CHECK(mine.answer.degenerate == ref.answer.degenerate);

    // On value ties the witnesses may legitimately differ: the merge keeps
    // one best pair per size, the reference keeps the global lexicographic
    // minimum. Check the reported witness is itself an optimal pair instead.
    const Witness& w = mine.answer.witness;
    std::vector<std::uint32_t> si, ti;
    for (std::uint32_t i = 0; i < q->sources.size(); ++i)
      if (std::count(w.sources.begin(), w.sources.end(), ctx.source_label(i))) si.push_back(i);
    for (std::uint32_t j = 0; j < q->sinks.size(); ++j)
      if (std::count(w.sinks.begin(), w.sinks.end(), ctx.sink_label(j))) ti.push_back(j);
    REQUIRE(si.size() == w.sources.size());
    REQUIRE(ti.size() == w.sinks.size());
    CHECK(si.size() + ti.size() >= q->k);
    CHECK(si.size() + ti.size() == mine.answer.density.den);
    CHECK(ctx.mflow(si, ti) == mine.answer.value);
  }
  CHECK(tested >= 20);
}

TEST_CASE("degenerate queries agree on the empty-side witness convention") {
  TemporalFlowNetwork tfn = fixtures::prune_net();
  Query q;
  q.sources = {tfn.vertex_of(8)};
  q.sinks = {tfn.vertex_of(2)};
  oracle::BruteforceResult ref = oracle::stdf_bruteforce(tfn, q);
  QueryContext ctx(tfn, q);
  EvalStats stats;
  ExactResult mine = stdf_exact(ctx, {}, stats);
  CHECK(ref.answer.degenerate);
  CHECK(mine.answer.degenerate);
  CHECK(mine.answer.witness == ref.answer.witness);
  CHECK(mine.answer.witness == Witness{{}, {2}});
  CHECK(mine.answer.density.num == 0);
  CHECK(mine.answer.density.den == 1);
}
