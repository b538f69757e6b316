#include "stdf/runner.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "stdf/oracle.hpp"
#include "stdf/parallel.hpp"
#include "stdf/peeling.hpp"

namespace stdf {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

nlohmann::ordered_json to_json(const Witness& w) {
  return {{"sources", w.sources}, {"sinks", w.sinks}};
}

nlohmann::ordered_json to_json(const StdfAnswer& a) {
  nlohmann::ordered_json j = to_json(a.witness);
  j["value"] = a.value;
  j["density"] = {{"num", a.density.num},
                  {"den", a.density.den},
                  {"decimal", static_cast<double>(a.density.num) /
                                  static_cast<double>(a.density.den)}};
  j["degenerate"] = a.degenerate;
  j["timed_out"] = a.timed_out;
  return j;
}

nlohmann::ordered_json to_json(const StageSizes& s) {
  return {{"vertices", s.vertices}, {"edges", s.edges}};
}

nlohmann::ordered_json steps_json(const PeelingTrace& trace) {
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const PeelStep& st : trace.steps) {
    nlohmann::ordered_json j{{"size", st.size},
                             {"mflow", st.mflow},
                             {"sources", st.sets.sources},
                             {"sinks", st.sets.sinks},
                             {"peeled", st.peeled},
                             {"side", st.from_source_side ? "source" : "sink"},
                             {"delta", st.delta}};
    if (!st.lpf_at_scan.empty()) {
      nlohmann::ordered_json lpf = nlohmann::ordered_json::array();
      for (const auto& [label, bound] : st.lpf_at_scan) lpf.push_back({label, bound});
      j["lpf"] = lpf;
    }
    steps.push_back(std::move(j));
  }
  return steps;
}

nlohmann::ordered_json wcc_json(const QueryContext& ctx, const WccPair& pair,
                                const DensestFlowArray& df) {
  std::vector<Label> src, sink;
  for (std::uint32_t i : pair.sources) src.push_back(ctx.source_label(i));
  for (std::uint32_t j : pair.sinks) sink.push_back(ctx.sink_label(j));
  return {{"sources", src}, {"sinks", sink}, {"values", df.values}};
}

TemporalFlowNetwork load_network(const std::string& path,
                                 const std::optional<WindowSpec>& window_spec) {
  TemporalFlowNetwork tfn = ingest_edge_list_file(path);
  if (window_spec) return window(tfn, window_spec->lo, window_spec->hi);
  return tfn;
}

nlohmann::ordered_json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  try {
    return nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.what());
  }
}

}  // namespace

Query load_query(const TemporalFlowNetwork& tfn, const std::string& path) {
  nlohmann::ordered_json j = parse_json_file(path);
  if (!j.is_object() || !j.contains("sources") || !j.contains("sinks") ||
      !j["sources"].is_array() || !j["sinks"].is_array())
    throw Error(ErrorCode::Parse, path + ": expected {sources: [...], sinks: [...], k}");
  Query q;
  try {
    for (const auto& v : j["sources"]) q.sources.push_back(tfn.vertex_of(v.get<Label>()));
    for (const auto& v : j["sinks"]) q.sinks.push_back(tfn.vertex_of(v.get<Label>()));
    q.k = j.value("k", std::uint64_t{1});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.what());
  }
  return q;
}

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path);
}

struct AlgoOutcome {
  StdfAnswer answer;
  nlohmann::ordered_json per_wcc;  // null when the algorithm does not decompose
  nlohmann::ordered_json trace;    // null unless peeling ran
};

AlgoOutcome dispatch(const QueryContext& ctx, const std::string& algo, std::uint64_t budget,
                     std::uint64_t exact_wcc_threshold, std::optional<Deadline> deadline,
                     bool record_lpf, EvalStats& stats) {
  AlgoOutcome out;
  ExactOptions eopts;
  eopts.budget = budget;
  eopts.deadline = deadline;
  PeelOptions popts;
  popts.prune = algo == "peel-prune" || algo == "peel-dc-prune";
  popts.record_lpf = record_lpf && popts.prune;

  if (algo == "dc") {
    ExactResult r = stdf_exact(ctx, eopts, stats);
    out.answer = r.answer;
    out.per_wcc = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.pairs.size(); ++i)
      out.per_wcc.push_back(wcc_json(ctx, r.pairs[i], r.per_wcc[i]));
  } else if (algo == "peel" || algo == "peel-prune") {
    PeelRunResult r = stdf_peel(ctx, popts, stats);
    out.answer = r.answer;
    out.trace = {{"steps", steps_json(r.trace)}};
  } else if (algo == "peel-dc" || algo == "peel-dc-prune") {
    PeelDcOptions opts;
    opts.peel = popts;
    opts.exact = eopts;
    opts.exact_wcc_threshold = exact_wcc_threshold;
    PeelDcResult r = peel_dc(ctx, opts, stats);
    out.answer = r.answer;
    out.per_wcc = nlohmann::ordered_json::array();
    nlohmann::ordered_json components = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.pairs.size(); ++i) {
      out.per_wcc.push_back(wcc_json(ctx, r.pairs[i], r.per_wcc[i]));
      nlohmann::ordered_json c = wcc_json(ctx, r.pairs[i], r.per_wcc[i]);
      c.erase("values");
      c["steps"] = r.traces[i] ? steps_json(*r.traces[i]) : nlohmann::ordered_json();
      components.push_back(std::move(c));
    }
    out.trace = {{"components", std::move(components)}};
  } else {
    throw Error(ErrorCode::Argument, "unknown algorithm: " + algo);
  }
  return out;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Argument:
    case ErrorCode::Query:
    case ErrorCode::Infeasible:
      return 2;
    case ErrorCode::Budget:
    case ErrorCode::Timeout:
      return 3;
    case ErrorCode::Parse:
    case ErrorCode::Validation:
    case ErrorCode::Io:
      return 4;
    case ErrorCode::Internal:
      return 1;
  }
  return 1;
}

RunResult run(const RunConfig& config) {
  RunResult result;
  try {
    if (config.threads) set_max_threads(*config.threads);
    if (config.time_limit_ms && *config.time_limit_ms == 0)
      throw Error(ErrorCode::Argument, "time limit must be positive");

    const auto t0 = Clock::now();
    TemporalFlowNetwork tfn = load_network(config.input_path, config.window);
    Query q = load_query(tfn, config.query_path);
    if (config.k_override) q.k = *config.k_override;
    if (q.k < 1) throw Error(ErrorCode::Query, "k must be at least 1");
    const double load_ms = ms_since(t0);

    const auto t1 = Clock::now();
    QueryContext ctx(tfn, q);
    const double prepare_ms = ms_since(t1);

    std::optional<Deadline> deadline;
    if (config.time_limit_ms)
      deadline = Clock::now() + std::chrono::milliseconds(*config.time_limit_ms);

    const auto t2 = Clock::now();
    EvalStats stats;
    AlgoOutcome outcome = dispatch(ctx, config.algo, config.budget, config.exact_wcc_threshold,
                                   deadline, !config.trace_path.empty(), stats);
    const double solve_ms = ms_since(t2);

    std::vector<Label> source_labels, sink_labels;
    for (std::size_t i = 0; i < ctx.query().sources.size(); ++i)
      source_labels.push_back(ctx.source_label(static_cast<std::uint32_t>(i)));
    for (std::size_t j = 0; j < ctx.query().sinks.size(); ++j)
      sink_labels.push_back(ctx.sink_label(static_cast<std::uint32_t>(j)));

    nlohmann::ordered_json report;
    report["query"] = {{"sources", source_labels}, {"sinks", sink_labels}, {"k", q.k}};
    report["algo"] = config.algo;
    report["answer"] = to_json(outcome.answer);
    report["stages"] = {{"input", to_json(ctx.input_size)},
                        {"reduced", to_json(ctx.reduced_size)},
                        {"expanded", to_json(ctx.expanded_size)},
                        {"compressed", to_json(ctx.compressed_size)}};
    report["stats"] = {{"subset_evaluations", stats.subset_evaluations},
                       {"maxflow_calls", ctx.maxflow_calls()}};
    report["per_wcc"] = outcome.per_wcc;
    report["elapsed_ms"] = {{"load", load_ms},
                            {"prepare", prepare_ms},
                            {"solve", solve_ms},
                            {"total", ms_since(t0)}};

    result.report = std::move(report);
    result.trace = std::move(outcome.trace);
    result.exit_code = outcome.answer.timed_out ? 3 : 0;

    if (!config.out_path.empty()) write_text(config.out_path, result.report.dump(2) + "\n");
    if (!config.trace_path.empty() && !result.trace.is_null())
      write_text(config.trace_path, result.trace.dump(2) + "\n");
  } catch (const Error& e) {
    result.report = {{"error", code_name(e.code())}, {"message", e.what()}};
    result.exit_code = exit_code_for(e.code());
  } catch (const std::exception& e) {
    result.report = {{"error", code_name(ErrorCode::Internal)}, {"message", e.what()}};
    result.exit_code = 1;
  }
  return result;
}

BenchResult bench(const BenchConfig& config) {
  BenchResult result;
  if (config.threads) set_max_threads(*config.threads);
  if (config.terminals < 2) throw Error(ErrorCode::Argument, "need at least two terminals");

  std::mt19937_64 rng(config.seed);
  TemporalFlowNetwork tfn = config.input_path.empty()
                                ? layered_tfn(rng, config.synth)
                                : ingest_edge_list_file(config.input_path);

  const std::uint32_t n_sources = config.terminals / 2;
  const std::uint32_t n_sinks = config.terminals - n_sources;

  std::ostringstream csv;
  csv << "query,algo,elapsed_ms,value,density_num,density_den,answer_size,timed_out\n";

  const char* algos[] = {"dc", "peel", "peel-prune", "peel-dc", "peel-dc-prune"};
  for (std::uint32_t qi = 0; qi < config.queries; ++qi) {
    std::optional<Query> q = random_query(rng, tfn, n_sources, n_sinks, config.k);
    if (!q)
      throw Error(ErrorCode::Argument,
                  "cannot draw " + std::to_string(config.terminals) +
                      " qualified terminals from the network");
    QueryContext ctx(tfn, *q);

    std::optional<StdfAnswer> exact;
    std::vector<std::pair<std::string, StdfAnswer>> approx;
    for (const char* algo : algos) {
      std::optional<Deadline> deadline;
      if (config.time_limit_ms)
        deadline = Clock::now() + std::chrono::milliseconds(*config.time_limit_ms);
      EvalStats stats;
      const auto t0 = Clock::now();
      try {
        AlgoOutcome out = dispatch(ctx, algo, config.budget, config.exact_wcc_threshold,
                                   deadline, false, stats);
        const double elapsed = ms_since(t0);
        const StdfAnswer& a = out.answer;
        csv << qi << ',' << algo << ',' << elapsed << ',' << a.value << ',' << a.density.num
            << ',' << a.density.den << ','
            << a.witness.sources.size() + a.witness.sinks.size() << ','
            << (a.timed_out ? 1 : 0) << '\n';
        if (std::string(algo) == "dc") {
          if (!a.timed_out) exact = a;
        } else {
          approx.emplace_back(algo, a);
        }
      } catch (const Error& e) {
        result.violations.push_back("query " + std::to_string(qi) + " " + algo +
                                    " failed: " + e.what());
      }
    }

    if (exact) {
      using wide = unsigned __int128;
      for (const auto& [name, a] : approx) {
        const wide exact_side = static_cast<wide>(exact->density.num) * a.density.den;
        const wide approx_side = static_cast<wide>(a.density.num) * exact->density.den;
        if (approx_side > exact_side)
          result.violations.push_back("query " + std::to_string(qi) + ": " + name +
                                      " denser than the exact answer");
        if (3 * approx_side < exact_side)
          result.violations.push_back("query " + std::to_string(qi) + ": " + name +
                                      " outside the 3-approximation bound");
      }
    }
  }
  result.csv = csv.str();
  return result;
}

}  // namespace stdf
