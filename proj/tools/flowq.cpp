#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "stdf/maxflow.hpp"
#include "stdf/oracle.hpp"
#include "stdf/runner.hpp"

namespace {

using nlohmann::ordered_json;

stdf::WindowSpec parse_window(const std::string& text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw stdf::Error(stdf::ErrorCode::Argument, "window must be lo:hi");
  stdf::WindowSpec w;
  const char* lo_begin = text.data();
  const char* lo_end = text.data() + colon;
  const char* hi_begin = lo_end + 1;
  const char* hi_end = text.data() + text.size();
  auto lo = std::from_chars(lo_begin, lo_end, w.lo);
  auto hi = std::from_chars(hi_begin, hi_end, w.hi);
  if (lo.ec != std::errc{} || lo.ptr != lo_end || hi.ec != std::errc{} || hi.ptr != hi_end)
    throw stdf::Error(stdf::ErrorCode::Argument, "window must be lo:hi with integer bounds");
  return w;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw stdf::Error(stdf::ErrorCode::Io, "cannot write " + out_path);
  out << text;
  if (!out) throw stdf::Error(stdf::ErrorCode::Io, "failed writing " + out_path);
}

stdf::TemporalFlowNetwork load(const std::string& input, const std::string& window_text) {
  if (input.empty()) throw stdf::Error(stdf::ErrorCode::Argument, "--input is required");
  stdf::TemporalFlowNetwork tfn = stdf::ingest_edge_list_file(input);
  if (window_text.empty()) return tfn;
  const stdf::WindowSpec w = parse_window(window_text);
  return stdf::window(tfn, w.lo, w.hi);
}

int do_transform(const std::string& input, const std::string& window_text,
                 const std::string& out_path) {
  if (out_path.empty())
    throw stdf::Error(stdf::ErrorCode::Argument, "transform requires --out for the edge list");
  stdf::TemporalFlowNetwork tfn = load(input, window_text);
  stdf::TimeExpandedNetwork ten = stdf::transform(tfn);

  std::ofstream csv(out_path);
  if (!csv) throw stdf::Error(stdf::ErrorCode::Io, "cannot write " + out_path);
  stdf::write_expanded_csv(ten, csv);

  ordered_json copies = ordered_json::array();
  for (stdf::VertexId c = 0; c < ten.net.vertex_count(); ++c)
    copies.push_back({{"id", c},
                      {"vertex", tfn.label_of(ten.owner[c])},
                      {"time", ten.stamp[c]}});
  ordered_json sidecar{{"copies", std::move(copies)}, {"horizontal", ten.to_horizontal}};
  emit(out_path + ".json", sidecar.dump(2) + "\n");

  ordered_json summary{{"vertices", ten.net.vertex_count()},
                       {"edges", ten.net.edge_count()},
                       {"out", out_path}};
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int do_maxflow(const std::string& input, const std::string& window_text, stdf::Label source,
               stdf::Label sink, bool temporal, bool naive) {
  stdf::TemporalFlowNetwork tfn = load(input, window_text);
  const stdf::VertexId s = tfn.vertex_of(source);
  const stdf::VertexId t = tfn.vertex_of(sink);

  ordered_json edges = ordered_json::array();
  std::uint64_t value = 0;
  if (naive) {
    if (!temporal)
      throw stdf::Error(stdf::ErrorCode::Argument, "the greedy baseline is temporal only");
    stdf::NaiveFlowResult r = stdf::naive_temporal_max_flow(tfn, s, t);
    value = r.value;
    for (stdf::EdgeId e = 0; e < tfn.edge_count(); ++e) {
      if (r.edge_flow[e] == 0) continue;
      edges.push_back({{"src", tfn.label_of(tfn.edge(e).src)},
                       {"dst", tfn.label_of(tfn.edge(e).dst)},
                       {"flow", r.edge_flow[e]}});
    }
  } else if (temporal) {
    stdf::ReduceResult red = stdf::reduce(tfn, {s}, {t});
    stdf::TimeExpandedNetwork ten = stdf::transform(red.net);
    if (ten.earliest[s] != stdf::kNoVertex && ten.latest[t] != stdf::kNoVertex) {
      stdf::Flow flow = stdf::max_flow(ten.net, ten.earliest[s], ten.latest[t]);
      value = flow.value;
      stdf::oracle::TemporalFlowAssignment a = stdf::oracle::project_flow(ten, flow);
      for (stdf::EdgeId e = 0; e < red.net.edge_count(); ++e) {
        if (a.edge_flow[e] == 0) continue;
        const stdf::TemporalEdge& ed = tfn.edge(red.source_edge[e]);
        edges.push_back({{"src", tfn.label_of(ed.src)},
                         {"dst", tfn.label_of(ed.dst)},
                         {"flow", a.edge_flow[e]}});
      }
    }
  } else {
    stdf::StaticFlowNetwork net = stdf::strip_timestamps(tfn);
    stdf::Flow flow = stdf::max_flow(net, s, t);
    value = flow.value;
    for (stdf::EdgeId e = 0; e < net.edge_count(); ++e) {
      if (flow.edge_flow[e] == 0) continue;
      edges.push_back({{"src", tfn.label_of(net.edge(e).src)},
                       {"dst", tfn.label_of(net.edge(e).dst)},
                       {"flow", flow.edge_flow[e]}});
    }
  }

  ordered_json report{{"value", value}, {"edges", std::move(edges)}};
  std::cout << report.dump(2) << "\n";
  return 0;
}

int do_oracle(const std::string& input, const std::string& window_text,
              const std::string& query_path, std::optional<std::uint64_t> k_override) {
  stdf::TemporalFlowNetwork tfn = load(input, window_text);
  if (query_path.empty()) throw stdf::Error(stdf::ErrorCode::Argument, "--query is required");
  stdf::Query q = stdf::load_query(tfn, query_path);
  if (k_override) q.k = *k_override;
  stdf::oracle::BruteforceResult r = stdf::oracle::stdf_bruteforce(tfn, q);
  ordered_json report{{"answer",
                       {{"sources", r.answer.witness.sources},
                        {"sinks", r.answer.witness.sinks},
                        {"value", r.answer.value},
                        {"density", {{"num", r.answer.density.num}, {"den", r.answer.density.den}}},
                        {"degenerate", r.answer.degenerate}}},
                      {"subset_evaluations", r.subset_evaluations}};
  std::cout << report.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"temporal transaction flow networks: expansion, max flow, densest flow queries"};
  app.require_subcommand(1);

  std::string input, window_text, out_path;
  std::uint64_t seed = 1;
  std::uint64_t time_limit_ms = 0;
  app.add_option("--input", input, "edge list CSV: src,dst,capacity,timestamp");
  app.add_option("--window", window_text, "keep edges with timestamp in lo:hi");
  app.add_option("--out", out_path, "output path (default stdout)");
  app.add_option("--seed", seed, "benchmark RNG seed");
  auto* time_limit_opt =
      app.add_option("--time-limit-ms", time_limit_ms, "anytime bound for exact search");

  auto* cmd_transform = app.add_subcommand("transform", "expand a temporal network");
  cmd_transform->fallthrough();

  auto* cmd_maxflow = app.add_subcommand("maxflow", "single-pair maximum flow");
  cmd_maxflow->fallthrough();
  stdf::Label source = 0, sink = 0;
  bool temporal = true, naive = false;
  cmd_maxflow->add_option("--source", source, "source vertex label")->required();
  cmd_maxflow->add_option("--sink", sink, "sink vertex label")->required();
  cmd_maxflow->add_option("--temporal", temporal, "respect timestamps (default true)");
  cmd_maxflow->add_flag("--naive", naive, "greedy baseline without flow rerouting");

  auto* cmd_stdf = app.add_subcommand("stdf", "densest flow query between terminal sets");
  cmd_stdf->fallthrough();
  std::string query_path, algo = "dc", trace_path;
  std::uint64_t budget = 1ull << 20, exact_wcc_threshold = 6;
  std::uint64_t k = 0;
  int threads = 0;
  cmd_stdf->add_option("--query", query_path, "query JSON path")->required();
  cmd_stdf->add_option("--k", k, "minimum answer size, overrides the query file");
  cmd_stdf->add_option("--algo", algo, "dc, peel, peel-prune, peel-dc, peel-dc-prune")
      ->check(CLI::IsMember({"dc", "peel", "peel-prune", "peel-dc", "peel-dc-prune"}));
  auto* budget_opt = cmd_stdf->add_option("--budget", budget, "max subset evaluations");
  cmd_stdf->add_option("--exact-wcc-threshold", exact_wcc_threshold,
                       "component size up to which enumeration replaces peeling");
  cmd_stdf->add_option("--trace", trace_path, "write the peeling trace here");
  auto* threads_opt = cmd_stdf->add_option("--threads", threads, "worker thread cap");

  auto* cmd_bench = app.add_subcommand("bench", "compare all algorithms on seeded queries");
  cmd_bench->fallthrough();
  std::uint32_t queries = 10, terminals = 8;
  std::uint64_t bench_k = 2;
  stdf::LayeredTfnOptions synth;
  std::uint64_t bench_budget = 1ull << 20, bench_threshold = 6;
  int bench_threads = 0;
  cmd_bench->add_option("--queries", queries, "number of random queries");
  cmd_bench->add_option("--terminals", terminals, "terminals per query, split evenly");
  cmd_bench->add_option("--k", bench_k, "minimum answer size");
  cmd_bench->add_option("--layers", synth.layers, "synthetic network layers");
  cmd_bench->add_option("--width", synth.width, "vertices per layer");
  cmd_bench->add_option("--edges", synth.edges, "synthetic edge count");
  cmd_bench->add_option("--max-capacity", synth.max_capacity, "max synthetic capacity");
  cmd_bench->add_option("--skip-percent", synth.skip_edge_percent, "layer-skipping edge share");
  auto* bench_budget_opt = cmd_bench->add_option("--budget", bench_budget);
  cmd_bench->add_option("--exact-wcc-threshold", bench_threshold);
  auto* bench_threads_opt = cmd_bench->add_option("--threads", bench_threads);

  auto* cmd_oracle = app.add_subcommand("oracle", "reference answers for debugging");
  cmd_oracle->fallthrough();
  cmd_oracle->group("");
  std::string oracle_query;
  std::uint64_t oracle_k = 0;
  cmd_oracle->add_option("--query", oracle_query, "query JSON path");
  auto* oracle_k_opt = cmd_oracle->add_option("--k", oracle_k);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_transform->parsed()) return do_transform(input, window_text, out_path);

    if (cmd_maxflow->parsed()) return do_maxflow(input, window_text, source, sink, temporal, naive);

    if (cmd_stdf->parsed()) {
      stdf::RunConfig config;
      config.input_path = input;
      if (!window_text.empty()) config.window = parse_window(window_text);
      config.query_path = query_path;
      config.algo = algo;
      if (k != 0) config.k_override = k;
      if (budget_opt->count()) config.budget = budget;
      config.exact_wcc_threshold = exact_wcc_threshold;
      if (time_limit_opt->count()) config.time_limit_ms = time_limit_ms;
      config.out_path = out_path;
      config.trace_path = trace_path;
      if (threads_opt->count()) config.threads = threads;
      stdf::RunResult r = stdf::run(config);
      if (out_path.empty() || r.exit_code != 0) std::cout << r.report.dump(2) << "\n";
      return r.exit_code;
    }

    if (cmd_bench->parsed()) {
      stdf::BenchConfig config;
      config.input_path = input;
      config.seed = seed;
      config.queries = queries;
      config.terminals = terminals;
      config.k = bench_k;
      if (bench_budget_opt->count()) config.budget = bench_budget;
      config.exact_wcc_threshold = bench_threshold;
      if (time_limit_opt->count()) config.time_limit_ms = time_limit_ms;
      if (bench_threads_opt->count()) config.threads = bench_threads;
      config.synth = synth;
      stdf::BenchResult r = stdf::bench(config);
      emit(out_path, r.csv);
      for (const std::string& v : r.violations) std::cerr << v << "\n";
      return r.exit_code;
    }

    if (cmd_oracle->parsed()) {
      std::optional<std::uint64_t> k_override;
      if (oracle_k_opt->count()) k_override = oracle_k;
      return do_oracle(input, window_text, oracle_query, k_override);
    }
  } catch (const stdf::Error& e) {
    ordered_json err{{"error", stdf::code_name(e.code())}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return stdf::exit_code_for(e.code());
  } catch (const std::exception& e) {
    ordered_json err{{"error", "EINTERNAL"}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 1;
  }
  return 0;
}
