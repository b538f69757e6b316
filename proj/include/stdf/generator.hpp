#pragma once

#include <optional>
#include <random>

#include "stdf/network.hpp"
#include "stdf/query.hpp"

namespace stdf {

struct RandomTfnOptions {
  std::uint32_t min_vertices = 4;
  std::uint32_t max_vertices = 8;
  std::uint32_t max_edges = 12;
  std::uint64_t max_capacity = 10;
  // distinct stamps keep the expanded network's exact size identities valid
  bool distinct_timestamps = true;
};

TemporalFlowNetwork random_tfn(std::mt19937_64& rng, const RandomTfnOptions& opt);

struct LayeredTfnOptions {
  std::uint32_t layers = 4;
  std::uint32_t width = 6;
  std::uint32_t edges = 60;
  std::uint64_t max_capacity = 20;
  std::uint32_t skip_edge_percent = 15;  // share of layer-skipping edges
};

// Layered forward network with mostly adjacent-layer edges and timestamps
// that grow with the source layer, so multi-hop temporal paths exist.
TemporalFlowNetwork layered_tfn(std::mt19937_64& rng, const LayeredTfnOptions& opt);

// Sources drawn from vertices that can send, sinks from vertices that can
// receive, disjoint. Empty when the network cannot supply enough terminals.
std::optional<Query> random_query(std::mt19937_64& rng, const TemporalFlowNetwork& tfn,
                                  std::uint32_t n_sources, std::uint32_t n_sinks,
                                  std::uint64_t k);

// True when some vertex has in-stamps t1 < t2 and out-stamps t3 < t4
// interleaved as t1 < t3 < t2 < t4. On such a vertex a greedy temporal
// augmentation can commit early arrivals to late departures and get stuck;
// without one (and with per-vertex distinct stamps) greedy reaches the
// maximum.
bool has_rdv(const TemporalFlowNetwork& tfn);

}  // namespace stdf
