#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <set>
#include <sstream>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "stdf/context.hpp"
#include "stdf/generator.hpp"
#include "stdf/maxflow.hpp"
#include "stdf/time_expanded.hpp"

using namespace stdf;

namespace {

VertexId touched_count(const TemporalFlowNetwork& tfn) {
  std::set<VertexId> touched;
  for (const TemporalEdge& e : tfn.edges()) {
    touched.insert(e.src);
    touched.insert(e.dst);
  }
  return static_cast<VertexId>(touched.size());
}

void check_expansion_shape(const TemporalFlowNetwork& tfn) {
  TimeExpandedNetwork ten = transform(tfn);
  const std::size_t m = tfn.edge_count();
  CHECK(ten.net.vertex_count() == 2 * m);
  CHECK(ten.net.edge_count() == 3 * m - touched_count(tfn));
  CHECK(is_dag(ten.net));

  for (EdgeId e = 0; e < m; ++e) {
    const EdgeId h = ten.to_horizontal[e];
    CHECK(ten.from_horizontal[h] == e);
    CHECK(ten.owner[ten.net.edge(h).src] == tfn.edge(e).src);
    CHECK(ten.owner[ten.net.edge(h).dst] == tfn.edge(e).dst);
    CHECK(ten.stamp[ten.net.edge(h).src] == tfn.edge(e).timestamp);
    CHECK(ten.net.edge(h).capacity.finite_value() == tfn.edge(e).capacity);
  }
  for (VertexId v = 0; v < tfn.vertex_count(); ++v) {
    const auto& chain = ten.copies[v];
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      CHECK(ten.stamp[chain[i]] < ten.stamp[chain[i + 1]]);
    if (!chain.empty()) {
      CHECK(ten.earliest[v] == chain.front());
      CHECK(ten.latest[v] == chain.back());
    } else {
      CHECK(ten.earliest[v] == kNoVertex);
    }
  }
}

}  // namespace

TEST_CASE("expansion size identities hold on the fixtures") {
  check_expansion_shape(fixtures::diamond());
  check_expansion_shape(fixtures::diamond_ordered());
  check_expansion_shape(fixtures::two_cluster());
  check_expansion_shape(fixtures::prune_net());

  TimeExpandedNetwork a = transform(fixtures::diamond());
  CHECK(a.net.vertex_count() == 16);
  CHECK(a.net.edge_count() == 17);
  TimeExpandedNetwork b = transform(fixtures::two_cluster());
  CHECK(b.net.vertex_count() == 16);
  CHECK(b.net.edge_count() == 14);
  TimeExpandedNetwork c = transform(fixtures::prune_net());
  CHECK(c.net.vertex_count() == 22);
  CHECK(c.net.edge_count() == 23);
}

TEST_CASE("expansion size identities hold on random networks") {
  std::mt19937_64 rng(11);
  RandomTfnOptions opt;
  opt.distinct_timestamps = true;
  for (int iter = 0; iter < 50; ++iter) {
    TemporalFlowNetwork tfn = random_tfn(rng, opt);
    check_expansion_shape(tfn);
  }
}

TEST_CASE("copy lookup and role classification on the ordered diamond") {
  TemporalFlowNetwork tfn = fixtures::diamond_ordered();
  TimeExpandedNetwork ten = transform(tfn);

  struct Expected {
    Label label;
    std::int64_t stamp;
    VertexRole role;
  };
  const Expected table[] = {
      {0, 1, VertexRole::FlowOut}, {0, 2, VertexRole::FlowOut}, {1, 3, VertexRole::FlowOut},
      {2, 5, VertexRole::FlowOut}, {3, 4, VertexRole::FlowOut}, {3, 6, VertexRole::FlowOut},
      {4, 8, VertexRole::FlowOut}, {5, 7, VertexRole::FlowOut}, {1, 1, VertexRole::FlowIn},
      {2, 2, VertexRole::FlowIn},  {3, 3, VertexRole::FlowIn},  {4, 4, VertexRole::FlowIn},
      {3, 5, VertexRole::FlowIn},  {5, 6, VertexRole::FlowIn},  {6, 7, VertexRole::FlowIn},
      {6, 8, VertexRole::FlowIn},
  };
  for (const Expected& x : table) {
    const VertexId copy = ten.copy_at(tfn.vertex_of(x.label), x.stamp);
    REQUIRE(copy != kNoVertex);
    CHECK(ten.owner[copy] == tfn.vertex_of(x.label));
    CHECK(ten.stamp[copy] == x.stamp);
    CHECK(classify(ten.net, copy) == x.role);
  }
  CHECK(ten.copy_at(tfn.vertex_of(0), 99) == kNoVertex);
}

TEST_CASE("a copy with bounded traffic on both sides is flow-crossing") {
  // 0 -> 1 at time 1 and 1 -> 2 at time 2, plus 0 -> 1 again at time 2 through
  // a midpoint; the copy (1, 2) then has a bounded in edge and a bounded out.
  std::istringstream in(
      "src,dst,capacity,timestamp\n"
      "0,1,2,1\n"
      "3,1,2,2\n"
      "1,2,2,2\n");
  TemporalFlowNetwork tfn = ingest_edge_list(in);
  TimeExpandedNetwork ten = transform(tfn);
  const VertexId crossing = ten.copy_at(tfn.vertex_of(1), 2);
  CHECK(classify(ten.net, crossing) == VertexRole::FlowCrossing);
  CHECK(std::string(role_name(VertexRole::FlowCrossing)) == "flow-crossing");
}

TEST_CASE("vertex contraction rewires, merges parallels and renumbers") {
  StaticFlowNetwork net;
  net.add_vertices(4);
  net.add_edge(0, 1, Capacity::finite(5));
  net.add_edge(1, 2, Capacity::infinite());
  net.add_edge(2, 3, Capacity::finite(4));
  net.add_edge(0, 2, Capacity::finite(7));

  VcpResult r = vcp(net, 1, 2);
  CHECK(r.net.vertex_count() == 3);
  CHECK(r.super_vertex == 2);
  CHECK(r.remap == std::vector<VertexId>{0, 2, 2, 1});
  REQUIRE(r.net.edge_count() == 2);
  CHECK(r.net.edge(0).src == 0);
  CHECK(r.net.edge(0).dst == 2);
  CHECK(r.net.edge(0).capacity.finite_value() == 12);
  CHECK(r.net.edge(1).src == 2);
  CHECK(r.net.edge(1).dst == 1);
  CHECK(r.net.edge(1).capacity.finite_value() == 4);

  CHECK_THROWS_AS(vcp(net, 1, 1), Error);
  CHECK_THROWS_AS(vcp(net, 1, 9), Error);
}

TEST_CASE("contraction saturates parallel capacities at unbounded") {
  StaticFlowNetwork net;
  net.add_vertices(3);
  net.add_edge(0, 1, Capacity::infinite());
  net.add_edge(1, 2, Capacity::infinite());
  net.add_edge(0, 2, Capacity::finite(9));
  VcpResult r = vcp(net, 1, 2);
  REQUIRE(r.net.edge_count() == 1);
  CHECK(r.net.edge(0).capacity.is_infinite());
}

TEST_CASE("full compression shrinks the ordered diamond to its skeleton") {
  TimeExpandedNetwork ten = transform(fixtures::diamond_ordered());
  TimeExpandedNetwork small = compress(ten, {});
  CHECK(small.compressed);
  CHECK(small.net.vertex_count() == 8);
  CHECK(small.net.edge_count() == 9);
  CHECK(is_dag(small.net));
}

TEST_CASE("compression respects protected copies and preserves max flow") {
  for (const char* csv : {fixtures::kDiamondCsv, fixtures::kDiamondOrderedCsv}) {
    TemporalFlowNetwork tfn = fixtures::load(csv);
    TimeExpandedNetwork ten = transform(tfn);
    const VertexId from = ten.earliest[tfn.vertex_of(0)];
    const VertexId to = ten.latest[tfn.vertex_of(6)];
    const std::uint64_t before = max_flow(ten.net, from, to).value;

    TimeExpandedNetwork small = compress(ten, {from, to});
    const VertexId from2 = small.earliest[tfn.vertex_of(0)];
    const VertexId to2 = small.latest[tfn.vertex_of(6)];
    REQUIRE(from2 != kNoVertex);
    REQUIRE(to2 != kNoVertex);
    CHECK(small.owner[from2] == tfn.vertex_of(0));
    CHECK(small.stamp[from2] == ten.stamp[from]);
    CHECK(max_flow(small.net, from2, to2).value == before);
    CHECK(small.net.vertex_count() <= tfn.edge_count() + tfn.vertex_count());
    CHECK(small.net.edge_count() <= 2 * tfn.edge_count());
  }
}

TEST_CASE("compression bounds hold on random networks") {
  std::mt19937_64 rng(13);
  RandomTfnOptions opt;
  opt.distinct_timestamps = true;
  for (int iter = 0; iter < 50; ++iter) {
    TemporalFlowNetwork tfn = random_tfn(rng, opt);
    TimeExpandedNetwork small = compress(transform(tfn), {});
    CHECK(small.net.vertex_count() <= tfn.edge_count() + tfn.vertex_count());
    CHECK(small.net.edge_count() <= 2 * tfn.edge_count());
    CHECK(is_dag(small.net));
  }
}

TEST_CASE("reduction drops exactly the edges no temporal path can use") {
  TemporalFlowNetwork tfn = fixtures::prune_net();
  const std::vector<VertexId> S{tfn.vertex_of(0), tfn.vertex_of(1)};
  const std::vector<VertexId> T{tfn.vertex_of(2), tfn.vertex_of(3)};
  ReduceResult red = reduce(tfn, S, T);

  CHECK(red.net.vertex_count() == tfn.vertex_count());
  REQUIRE(red.net.edge_count() == 4);
  using Row = std::tuple<Label, Label, std::uint64_t, std::int64_t>;
  std::multiset<Row> got, want{{1, 5, 1, 3}, {5, 3, 1, 4}, {0, 7, 1, 2}, {7, 2, 1, 5}};
  for (const TemporalEdge& e : red.net.edges())
    got.insert({red.net.label_of(e.src), red.net.label_of(e.dst), e.capacity, e.timestamp});
  CHECK(got == want);
  CHECK(red.source_edge == std::vector<EdgeId>{7, 8, 9, 10});

  for (EdgeId e = 0; e < red.net.edge_count(); ++e) {
    const TemporalEdge& kept = red.net.edge(e);
    const TemporalEdge& orig = tfn.edge(red.source_edge[e]);
    CHECK(kept.src == orig.src);
    CHECK(kept.dst == orig.dst);
  }
}

TEST_CASE("reduction never changes a query's flow values") {
  TemporalFlowNetwork tfn = fixtures::prune_net();
  Query q;
  q.sources = {tfn.vertex_of(0), tfn.vertex_of(1)};
  q.sinks = {tfn.vertex_of(2), tfn.vertex_of(3)};
  QueryContext full(tfn, q, {true, true});
  QueryContext plain(tfn, q, {false, false});
  CHECK(full.mflow({0, 1}, {0, 1}) == 2);
  CHECK(plain.mflow({0, 1}, {0, 1}) == 2);
  CHECK(full.mflow({0}, {0, 1}) == 1);
  CHECK(plain.mflow({0}, {0, 1}) == 1);
  CHECK(full.mflow({1}, {1}) == 1);
  CHECK(plain.mflow({1}, {1}) == 1);
}

TEST_CASE("expanded edge list serialization") {
  TimeExpandedNetwork ten = transform(fixtures::diamond());
  std::ostringstream out;
  write_expanded_csv(ten, out);
  const std::string text = out.str();
  CHECK(text.rfind("src,dst,capacity\n", 0) == 0);
  CHECK(text.find("inf") != std::string::npos);
}
