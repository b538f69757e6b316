#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "stdf/error.hpp"
#include "stdf/generator.hpp"

namespace stdf {

struct WindowSpec {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

struct RunConfig {
  std::string input_path;
  std::optional<WindowSpec> window;
  std::string query_path;
  std::string algo = "dc";  // dc, peel, peel-prune, peel-dc, peel-dc-prune
  std::optional<std::uint64_t> k_override;
  std::uint64_t budget = 1ull << 20;
  std::uint64_t exact_wcc_threshold = 6;
  std::optional<std::uint64_t> time_limit_ms;  // honored by the exact search
  std::string out_path;    // empty writes to stdout
  std::string trace_path;  // peeling variants dump their trace here
  std::optional<int> threads;
};

struct RunResult {
  int exit_code = 0;
  nlohmann::ordered_json report;
  nlohmann::ordered_json trace;  // null unless a peeling trace was produced
};

// Reads {"sources": [...], "sinks": [...], "k": n} with user labels.
Query load_query(const TemporalFlowNetwork& tfn, const std::string& path);

// Loads, windows, evaluates, and reports one query. Identical config gives
// identical output except for the elapsed_ms block. Errors come back as an
// {error, message} report with the matching exit code instead of throwing.
RunResult run(const RunConfig& config);

struct BenchConfig {
  std::string input_path;  // empty generates a layered synthetic network
  std::uint64_t seed = 1;
  std::uint32_t queries = 10;
  std::uint32_t terminals = 8;  // per query, split evenly
  std::uint64_t k = 2;
  std::uint64_t budget = 1ull << 20;
  std::uint64_t exact_wcc_threshold = 6;
  std::optional<std::uint64_t> time_limit_ms;
  std::optional<int> threads;
  LayeredTfnOptions synth;
};

struct BenchResult {
  int exit_code = 0;
  std::string csv;
  // sanity findings, e.g. an exact run beaten by a peel run; empty when clean
  std::vector<std::string> violations;
};

// Runs every algorithm variant on seeded random queries over one network and
// emits per-run CSV rows. Same seed, same CSV, elapsed column aside.
BenchResult bench(const BenchConfig& config);

int exit_code_for(ErrorCode code);

}  // namespace stdf
