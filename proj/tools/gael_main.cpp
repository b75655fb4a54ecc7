// gael: community detection with an ensemble-crossover genetic algorithm.
//
//   gael detect    --graph FILE [GA flags] [--out FILE] [--json FILE] [--dot FILE]
//   gael score     --graph FILE --pred FILE [--truth FILE]
//   gael gen-gn    --pout P --seed S --out FILE [--truth-out FILE]
//   gael benchmark [--pout-min --pout-max --pout-step --reps] [GA flags] [--out FILE]
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gael/benchmark.hpp"
#include "gael/ga_engine.hpp"
#include "gael/graph.hpp"
#include "gael/partition.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr std::uint64_t kDefaultSeed = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_seed(const std::string& text) {
  if (text == "random") {
    std::random_device device;
    const std::uint64_t seed = (static_cast<std::uint64_t>(device()) << 32) | device();
    std::cout << "seed=" << seed << '\n';
    return seed;
  }
  std::size_t used = 0;
  std::uint64_t seed = 0;
  try {
    seed = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text.front() == '-')
    throw UsageError("--seed expects a non-negative integer or 'random', got '" + text + "'");
  return seed;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw gael::DataError("cannot write '" + path + "'");
  return out;
}

std::string format_q(double q) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", q);
  return buf;
}

struct GaFlags {
  gael::GaConfig cfg;
  std::string seed = std::to_string(kDefaultSeed);
  unsigned threads = 0;

  void attach(CLI::App& cmd) {
    cmd.add_option("--mu", cfg.mu, "Population size")->capture_default_str();
    cmd.add_option("--lambda", cfg.lambda, "Offspring per generation")->capture_default_str();
    cmd.add_option("--ensemble", cfg.ensemble_size, "Parents per crossover (M)")->capture_default_str();
    cmd.add_option("--tournament", cfg.tournament_size, "Tournament size")->capture_default_str();
    cmd.add_option("--walk-len", cfg.walk_length, "Random-walk length for initialization")->capture_default_str();
    cmd.add_option("--mutation-rate", cfg.mutation_rate, "Fraction of nodes mutated per offspring")
        ->capture_default_str();
    cmd.add_option("--stall", cfg.stall_generations, "Stop after this many generations without improvement")
        ->capture_default_str();
    cmd.add_option("--max-gens", cfg.max_generations, "Generation cap")->capture_default_str();
    cmd.add_option("--seed", seed, "Random seed, or 'random'")->capture_default_str();
    cmd.add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
  }

  gael::GaConfig resolve() {
    cfg.seed = parse_seed(seed);
    cfg.threads = threads;
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }
};

struct DetectArgs {
  std::string graph, out, json, dot;
  GaFlags ga;
};

int cmd_detect(DetectArgs& args) {
  const auto cfg = args.ga.resolve();
  const auto graph = gael::load_edge_list_file(args.graph);
  const auto report = gael::run(graph, cfg);

  if (!args.out.empty()) {
    auto out = open_output(args.out);
    gael::write_partition(out, graph, report.best);
  }
  if (!args.json.empty()) {
    nlohmann::json doc;
    doc["best_q"] = report.best_q;
    doc["generations"] = report.generations_run;
    doc["q_trace"] = report.q_trace;
    doc["terminated_by"] = gael::to_string(report.terminated_by);
    doc["seed"] = report.seed;
    doc["community_count"] = report.best.community_count();
    doc["wall_seconds"] = report.wall_seconds;
    auto out = open_output(args.json);
    out << doc.dump(2) << '\n';
  }
  if (!args.dot.empty()) {
    auto out = open_output(args.dot);
    gael::write_dot(out, graph, report.best);
  }
  std::cout << "Q=" << format_q(report.best_q) << " communities=" << report.best.community_count()
            << " generations=" << report.generations_run << '\n';
  return kExitOk;
}

struct ScoreArgs {
  std::string graph, pred, truth;
};

int cmd_score(const ScoreArgs& args) {
  const auto graph = gael::load_edge_list_file(args.graph);
  const auto pred = gael::read_partition_file(args.pred, graph);
  std::cout << "Q=" << format_q(gael::modularity(graph, pred)) << '\n';
  if (!args.truth.empty()) {
    const auto truth = gael::read_partition_file(args.truth, graph);
    std::cout << "accuracy=" << format_q(gael::accuracy(pred, truth)) << '\n';
  }
  return kExitOk;
}

struct GenArgs {
  double p_out = 0.0;
  std::string seed = std::to_string(kDefaultSeed);
  std::string out, truth_out;
};

int cmd_gen_gn(const GenArgs& args) {
  const gael::GnSpec spec{args.p_out};
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::uint64_t seed = parse_seed(args.seed);
  gael::Rng rng(gael::derive_seed(seed, {0}));
  const auto net = gael::generate_gn(spec, rng);

  auto out = open_output(args.out);
  out << "# GN benchmark: 128 nodes, 4 groups of 32, expected degree 16, p_out=" << args.p_out
      << ", seed=" << seed << '\n';
  gael::write_edge_list(out, net.graph);
  if (!args.truth_out.empty()) {
    auto truth = open_output(args.truth_out);
    gael::write_partition(truth, net.graph, net.truth);
  }
  std::cout << "nodes=" << net.graph.node_count() << " edges=" << net.graph.edge_count() << '\n';
  return kExitOk;
}

struct BenchArgs {
  double p_min = 0.0, p_max = 0.5, p_step = 0.1;
  std::size_t reps = 20;
  std::string out;
  GaFlags ga;
};

int cmd_benchmark(BenchArgs& args) {
  if (!(args.p_step > 0.0)) throw UsageError("--pout-step must be positive");
  if (args.p_min > args.p_max) throw UsageError("--pout-min exceeds --pout-max");
  if (args.reps < 1) throw UsageError("--reps must be at least 1");
  std::vector<double> values;
  const auto count = static_cast<std::size_t>(std::floor((args.p_max - args.p_min) / args.p_step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    // Round away accumulated representation error (0.30000000000000004).
    values.push_back(std::round((args.p_min + static_cast<double>(i) * args.p_step) * 1e9) / 1e9);
  }
  for (double p : values) {
    try {
      gael::GnSpec{p}.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  auto cfg = args.ga.resolve();
  const auto rows = gael::sweep(values, args.reps, cfg, cfg.seed, cfg.threads);
  if (args.out.empty()) {
    gael::write_sweep_csv(std::cout, rows);
  } else {
    auto out = open_output(args.out);
    gael::write_sweep_csv(out, rows);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community detection by a genetic algorithm with ensemble-learning crossover"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  DetectArgs detect;
  auto* detect_cmd = app.add_subcommand("detect", "Find communities in an edge-list graph");
  detect_cmd->add_option("--graph", detect.graph, "Edge-list file")->required();
  detect_cmd->add_option("--out", detect.out, "Write the partition (node<TAB>label)");
  detect_cmd->add_option("--json", detect.json, "Write the run report as JSON");
  detect_cmd->add_option("--dot", detect.dot, "Write a Graphviz rendering");
  detect.ga.attach(*detect_cmd);

  ScoreArgs score;
  auto* score_cmd = app.add_subcommand("score", "Modularity and accuracy of a partition file");
  score_cmd->add_option("--graph", score.graph, "Edge-list file")->required();
  score_cmd->add_option("--pred", score.pred, "Partition to score")->required();
  score_cmd->add_option("--truth", score.truth, "Ground-truth partition");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-gn", "Generate a GN benchmark network");
  gen_cmd->add_option("--pout", gen.p_out, "Expected fraction of inter-community edges, in [0, 0.5]")->required();
  gen_cmd->add_option("--seed", gen.seed, "Random seed, or 'random'")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Edge-list output")->required();
  gen_cmd->add_option("--truth-out", gen.truth_out, "Ground-truth partition output");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("benchmark", "GN accuracy sweep, written as CSV");
  bench_cmd->add_option("--pout-min", bench.p_min)->capture_default_str();
  bench_cmd->add_option("--pout-max", bench.p_max)->capture_default_str();
  bench_cmd->add_option("--pout-step", bench.p_step)->capture_default_str();
  bench_cmd->add_option("--reps", bench.reps, "Networks per p_out value")->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "CSV output (stdout if omitted)");
  bench.ga.attach(*bench_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*detect_cmd) return cmd_detect(detect);
    if (*score_cmd) return cmd_score(score);
    if (*gen_cmd) return cmd_gen_gn(gen);
    if (*bench_cmd) return cmd_benchmark(bench);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const gael::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
