#pragma once

#include <cstdint>
#include <vector>

#include "stdf/network.hpp"

namespace stdf {

struct Query {
  std::vector<VertexId> sources;
  std::vector<VertexId> sinks;
  std::uint64_t k = 1;
};

// Exact rational flow density: num is a flow value, den a terminal count.
struct Density {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
};

// -1, 0, 1 by cross multiplication; never goes through floating point.
int compare(const Density& a, const Density& b);

// A subset pair reported by user labels, both sides sorted ascending.
struct Witness {
  std::vector<Label> sources;
  std::vector<Label> sinks;
};

bool lex_less(const Witness& a, const Witness& b);
bool operator==(const Witness& a, const Witness& b);

// values[c] = best flow over subset pairs of total size exactly c, with the
// achieving pair alongside. values[0] and values[1] are always 0.
struct DensestFlowArray {
  std::vector<std::uint64_t> values;
  std::vector<Witness> witnesses;

  std::size_t max_size() const { return values.empty() ? 0 : values.size() - 1; }
};

struct StdfAnswer {
  Witness witness;
  std::uint64_t value = 0;
  Density density;
  bool degenerate = false;  // no positive flow at any qualifying size
  bool timed_out = false;   // partial search: value is a lower bound
};

struct EvalStats {
  std::uint64_t subset_evaluations = 0;
  std::uint64_t maxflow_calls = 0;
};

// One weakly connected component of the source-sink reachability graph,
// as indices into Query::sources and Query::sinks, ascending by label.
struct WccPair {
  std::vector<std::uint32_t> sources;
  std::vector<std::uint32_t> sinks;

  std::size_t size() const { return sources.size() + sinks.size(); }
};

}  // namespace stdf
