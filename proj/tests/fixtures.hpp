#pragma once

#include <sstream>
#include <string>

#include "stdf/network.hpp"

namespace fixtures {

// Seven-vertex diamond with a two-path tail. Static max flow s->t is 7 but the
// timestamps force almost everything to miss its connection: temporal max is 2.
inline const char* kDiamondCsv =
    "src,dst,capacity,timestamp\n"
    "0,1,3,1\n"
    "0,2,4,2\n"
    "1,3,3,3\n"
    "2,3,4,4\n"
    "3,5,5,1\n"
    "3,4,2,5\n"
    "5,6,5,2\n"
    "4,6,2,6\n";

// Same shape, timestamps increasing along every path. Temporal max is 8; the
// greedy path baseline stops at 6 because it commits v3->v4 capacity too early.
inline const char* kDiamondOrderedCsv =
    "src,dst,capacity,timestamp\n"
    "0,1,5,1\n"
    "0,2,3,2\n"
    "1,3,5,3\n"
    "2,3,3,5\n"
    "3,5,6,6\n"
    "3,4,2,4\n"
    "5,6,7,7\n"
    "4,6,4,8\n";

// Two independent sender/receiver clusters: {0,1}x{4,5,6} and {2,3}x{7,8}.
// Vertex 9 is an intermediate hop. Used for decomposition and merging.
inline const char* kTwoClusterCsv =
    "src,dst,capacity,timestamp\n"
    "0,4,1,1\n"
    "0,5,1,2\n"
    "1,9,9,3\n"
    "9,5,5,4\n"
    "9,6,5,5\n"
    "2,7,3,6\n"
    "3,7,1,7\n"
    "3,8,7,8\n";

// Network where most edges are unusable for S={0,1}, T={2,3}: early departures
// before anything can arrive, late arrivals nothing can consume, and the
// isolated pair 8->9. Exactly four edges survive reduction.
inline const char* kPruneCsv =
    "src,dst,capacity,timestamp\n"
    "0,4,2,3\n"
    "1,4,2,4\n"
    "4,7,3,1\n"
    "4,5,2,2\n"
    "5,6,2,1\n"
    "6,3,1,2\n"
    "8,9,1,1\n"
    "1,5,1,3\n"
    "5,3,1,4\n"
    "0,7,1,2\n"
    "7,2,1,5\n";

inline stdf::TemporalFlowNetwork load(const char* csv) {
  std::istringstream in(csv);
  return stdf::ingest_edge_list(in);
}

inline stdf::TemporalFlowNetwork diamond() { return load(kDiamondCsv); }
inline stdf::TemporalFlowNetwork diamond_ordered() { return load(kDiamondOrderedCsv); }
inline stdf::TemporalFlowNetwork two_cluster() { return load(kTwoClusterCsv); }
inline stdf::TemporalFlowNetwork prune_net() { return load(kPruneCsv); }

}  // namespace fixtures
