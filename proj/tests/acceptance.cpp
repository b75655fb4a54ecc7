// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
//
//   gael_acceptance          all criteria
//   gael_acceptance 3 5      only the listed ones

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gael/benchmark.hpp"
#include "gael/crossover.hpp"
#include "gael/ga_engine.hpp"
#include "gael/graph.hpp"
#include "gael/partition.hpp"
#include "gael/walk_init.hpp"
#include "oracles.hpp"

namespace {

using namespace gael;
using Clock = std::chrono::steady_clock;

std::string data_path(const std::string& name) { return std::string(GAEL_DATA_DIR) + "/" + name; }

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Runs {
  std::vector<RunReport> reports;
  double seconds = 0.0;
};

Runs seeded_runs(const Graph& g) {
  Runs out;
  const auto start = Clock::now();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GaConfig cfg;
    cfg.seed = seed;
    out.reports.push_back(run(g, cfg));
  }
  out.seconds = seconds_since(start);
  return out;
}

const Graph& karate() {
  static const Graph g = load_edge_list_file(data_path("karate.edges"));
  return g;
}

const Graph& football() {
  static const Graph g = load_edge_list_file(data_path("football.edges"));
  return g;
}

const Runs& karate_runs() {
  static const Runs r = seeded_runs(karate());
  return r;
}

const Runs& football_runs() {
  static const Runs r = seeded_runs(football());
  return r;
}

struct GnSweep {
  std::vector<double> p_out{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<SweepRow> rows;
  std::vector<std::vector<double>> traces;
  double seconds = 0.0;
};

const GnSweep& gn_sweep() {
  static const GnSweep s = [] {
    GnSweep out;
    constexpr std::size_t reps = 20;
    out.traces.resize(out.p_out.size() * reps);
    const auto start = Clock::now();
    out.rows = sweep(out.p_out, reps, GaConfig{}, 1, 0,
                     [&](std::size_t a, std::size_t r, const RunReport& report) {
                       out.traces[a * reps + r] = report.q_trace;
                     });
    out.seconds = seconds_since(start);
    return out;
  }();
  return s;
}

struct DeterminismRuns {
  std::vector<std::string> outputs;  // per graph: threads 1, threads 4, threads 1 again
  std::vector<RunReport> reports;
};

const DeterminismRuns& determinism_runs() {
  static const DeterminismRuns d = [] {
    DeterminismRuns out;
    for (const Graph* g : {&karate(), &football()}) {
      for (unsigned threads : {1u, 4u, 1u}) {
        GaConfig cfg;
        cfg.seed = 2024;
        cfg.threads = threads;
        auto report = run(*g, cfg);
        std::ostringstream text;
        write_partition(text, *g, report.best);
        out.outputs.push_back(text.str());
        out.reports.push_back(std::move(report));
      }
    }
    return out;
  }();
  return d;
}

Outcome karate_reproduction() {
  const auto& runs = karate_runs();
  bool ok = runs.seconds < 10.0;
  double lo = 1, hi = -1;
  std::size_t bad_count = 0;
  for (const auto& r : runs.reports) {
    lo = std::min(lo, r.best_q);
    hi = std::max(hi, r.best_q);
    if (std::fabs(r.best_q - 0.4198) > 1e-4) ok = false;
    if (r.best.community_count() != 4) {
      ok = false;
      ++bad_count;
    }
  }
  const bool identical = std::all_of(runs.reports.begin(), runs.reports.end(), [&](const RunReport& r) {
    return canonicalize(r.best) == canonicalize(runs.reports.front().best);
  });
  return {ok && identical, fmt("Q in [%.6f, %.6f], runs without 4 communities=%zu, identical=%s, %.2fs", lo, hi, bad_count,
                  identical ? "yes" : "no", runs.seconds)};
}

Outcome football_reproduction() {
  const auto& runs = football_runs();
  static const Partition truth = read_partition_file(data_path("football.truth"), football());
  double sum_q = 0, max_q = -1, sum_acc = 0, min_acc = 1;
  for (const auto& r : runs.reports) {
    sum_q += r.best_q;
    max_q = std::max(max_q, r.best_q);
    const double acc = accuracy(r.best, truth);
    sum_acc += acc;
    min_acc = std::min(min_acc, acc);
  }
  const double mean_q = sum_q / 10, mean_acc = sum_acc / 10;
  const bool ok = mean_q >= 0.600 && max_q >= 0.6044 && mean_acc >= 0.83 && runs.seconds < 120.0;
  return {ok, fmt("mean Q=%.6f, max Q=%.6f, mean accuracy=%.6f (min %.6f), %.2fs", mean_q, max_q, mean_acc,
                  min_acc, runs.seconds)};
}

Outcome gn_sweep_accuracy() {
  const auto& s = gn_sweep();
  bool ok = s.seconds < 15 * 60.0;
  std::string detail;
  for (const auto& row : s.rows) {
    const double need = row.p_out < 0.45 ? 0.99 : 0.95;
    if (row.mean_accuracy < need) ok = false;
    detail += fmt("%.1f:%.4f%s ", row.p_out, row.mean_accuracy, row.mean_accuracy < need ? "(<" : "");
    if (row.mean_accuracy < need) detail += fmt("%.2f) ", need);
  }
  return {ok, detail + fmt("%.1fs", s.seconds)};
}

Outcome modularity_oracle() {
  std::mt19937_64 rng(4);
  double worst_q = 0.0;
  std::size_t partitions = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const Graph g = oracle::random_graph(n, 0.5, rng);
    oracle::for_each_set_partition(n, [&](const std::vector<Label>& labels) {
      worst_q = std::max(worst_q, std::fabs(modularity(g, labels) - oracle::literal_modularity(g, labels)));
      ++partitions;
    });
  }
  double worst_delta = 0.0;
  int merges = 0;
  while (merges < 1000) {
    const std::size_t n = 4 + rng() % 27;
    const Graph g = oracle::random_graph(n, 0.25, rng);
    auto labels = canonical_labels(oracle::random_labels(n, 2 + rng() % 6, rng));
    const ModularityState state(g, Partition(labels));
    std::vector<CommunityId> alive;
    for (CommunityId c = 0; c < state.community_slots(); ++c)
      if (state.live(c)) alive.push_back(c);
    if (alive.size() < 2) continue;
    std::shuffle(alive.begin(), alive.end(), rng);
    const CommunityId a = alive[0], b = alive[1];
    std::size_t cross = 0;
    for (const auto& e : g.edges())
      cross += (labels[e.first] == a && labels[e.second] == b) || (labels[e.first] == b && labels[e.second] == a);
    const double before = oracle::literal_modularity(g, labels);
    std::replace(labels.begin(), labels.end(), b, a);
    const double delta = merge_delta_q(state, a, b, cross);
    worst_delta = std::max(worst_delta, std::fabs(delta - (oracle::literal_modularity(g, labels) - before)));
    ++merges;
  }
  return {worst_q <= 1e-12 && worst_delta <= 1e-10,
          fmt("%zu partitions max |dQ|=%.2e, %d merges max |ddQ|=%.2e", partitions, worst_q, merges, worst_delta)};
}

Outcome crossover_label_immunity() {
  const Graph& g = karate();
  const EnsembleCrossover cx(g);
  std::mt19937_64 rng(55);
  int mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Partition> parents, permuted;
    for (int i = 0; i < 10; ++i) {
      const std::size_t k = 2 + rng() % 6;
      const auto labels = oracle::random_labels(g.node_count(), k, rng);
      std::vector<Label> perm(k);
      std::iota(perm.begin(), perm.end(), Label{100});
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<Label> relabelled(labels.size());
      for (std::size_t v = 0; v < labels.size(); ++v) relabelled[v] = perm[labels[v]];
      parents.emplace_back(labels);
      permuted.emplace_back(std::move(relabelled));
    }
    if (!(canonicalize(cx(parents)) == canonicalize(cx(permuted)))) ++mismatches;
  }
  return {mismatches == 0, fmt("100 parent sets, %d changed children", mismatches)};
}

Outcome walk_probability_properties() {
  std::mt19937_64 rng(66);
  std::size_t violations = 0, checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 49;
    const Graph g = oracle::random_graph(n, 2.5 / static_cast<double>(n), rng);
    std::vector<NodeId> members;
    for (NodeId v = 0; v < n; ++v)
      if (rng() % 4) members.push_back(v);
    if (members.empty()) members.push_back(0);
    const NodeId t = members[rng() % members.size()];
    const auto dist = oracle::bfs_distances(g, members, t);
    std::vector<double> previous(n, 0.0);
    for (unsigned l = 1; l <= 6; ++l) {
      const auto a = arrival_probabilities(g, members, t, l);
      violations += a.prob[t] != 1.0;
      for (NodeId v : members) {
        const double p = a.prob[v];
        violations += p < 0.0 || p > 1.0;
        violations += p < previous[v];
        violations += (p > 0.0) != (dist[v] <= l);
        ++checked;
      }
      previous = a.prob;
    }
  }
  return {violations == 0, fmt("50 graphs, %zu entries, %zu violations", checked, violations)};
}

Outcome determinism() {
  const auto& d = determinism_runs();
  bool ok = true;
  for (std::size_t g = 0; g < 2; ++g)
    for (std::size_t i = 1; i < 3; ++i) ok = ok && d.outputs[g * 3] == d.outputs[g * 3 + i];
  return {ok, fmt("karate and football, seed 2024, threads {1,4,1}: %s", ok ? "byte-identical" : "outputs differ")};
}

Outcome elitism() {
  std::size_t traces = 0, broken = 0;
  auto check = [&](const std::vector<double>& t) {
    ++traces;
    broken += !std::is_sorted(t.begin(), t.end());
  };
  for (const auto& r : karate_runs().reports) check(r.q_trace);
  for (const auto& r : football_runs().reports) check(r.q_trace);
  for (const auto& t : gn_sweep().traces) check(t);
  for (const auto& r : determinism_runs().reports) check(r.q_trace);
  return {broken == 0, fmt("%zu traces, %zu decreasing", traces, broken)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "karate reproduction", karate_reproduction},
      {2, "football reproduction", football_reproduction},
      {3, "GN sweep accuracy", gn_sweep_accuracy},
      {4, "modularity oracle", modularity_oracle},
      {5, "crossover label immunity", crossover_label_immunity},
      {6, "walk probability properties", walk_probability_properties},
      {7, "determinism across thread counts", determinism},
      {8, "elitism", elitism},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %d %s: %s\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name, outcome.detail.c_str());
    std::fflush(stdout);
    failed += !outcome.pass;
  }
  return failed == 0 ? 0 : 1;
}
