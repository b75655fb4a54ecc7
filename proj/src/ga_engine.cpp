#include "gael/ga_engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gael/crossover.hpp"
#include "gael/parallel.hpp"
#include "gael/walk_init.hpp"

namespace gael {

namespace {

// Best Q must rise by more than this to reset the stall counter.
constexpr double kImprovementEps = 1e-12;

}  // namespace

void GaConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("invalid GA config: " + what); };
  if (ensemble_size < 2) fail("ensemble size must be at least 2");
  if (ensemble_size >= mu) fail("ensemble size must be smaller than mu");
  if (lambda < 1) fail("lambda must be at least 1");
  if (tournament_size < 1 || tournament_size > mu) fail("tournament size must lie in [1, mu]");
  if (walk_length < 1) fail("walk length must be at least 1");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) fail("mutation rate must lie in [0, 1]");
  if (stall_generations < 1) fail("stall generations must be at least 1");
  if (max_generations < 1) fail("max generations must be at least 1");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::stall:
      return "stall";
    case Termination::max_generations:
      return "max_generations";
  }
  return "unknown";
}

Partition mutate(const Graph& g, const Partition& p, double rate, Rng& rng) {
  if (p.size() != g.node_count()) throw std::invalid_argument("partition does not cover the graph");
  if (!(rate >= 0.0 && rate <= 1.0)) throw std::invalid_argument("mutation rate must lie in [0, 1]");
  const std::size_t n = g.node_count();
  // The small slack keeps products like 0.1 * 30 from rounding up to 4.
  const auto genes = std::min<std::size_t>(n, static_cast<std::size_t>(std::ceil(rate * static_cast<double>(n) - 1e-9)));

  std::vector<Label> labels(p.labels().begin(), p.labels().end());
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::vector<Label> seen;
  std::vector<Label> candidates;
  for (std::size_t i = 0; i < genes; ++i) {
    std::swap(order[i], order[i + rng.uniform_index(n - i)]);
    const NodeId v = order[i];
    const auto nbrs = g.neighbors(v);
    if (nbrs.empty()) continue;

    seen.clear();
    for (NodeId w : nbrs) seen.push_back(labels[w]);
    std::sort(seen.begin(), seen.end());
    candidates.clear();
    std::size_t best = 0;
    for (std::size_t lo = 0; lo < seen.size();) {
      std::size_t hi = lo;
      while (hi < seen.size() && seen[hi] == seen[lo]) ++hi;
      if (hi - lo > best) {
        best = hi - lo;
        candidates.clear();
      }
      if (hi - lo == best) candidates.push_back(seen[lo]);
      lo = hi;
    }
    labels[v] = candidates.size() == 1 ? candidates.front() : candidates[rng.uniform_index(candidates.size())];
  }

  Partition out(canonical_labels(labels));
  out.evaluate(g);
  return out;
}

std::vector<Partition> mu_plus_lambda_select(std::vector<Partition> parents, std::vector<Partition> offspring,
                                             std::size_t mu) {
  struct Candidate {
    Partition individual;
    bool parent;
    std::vector<Label> canonical;
  };
  std::vector<Candidate> pool;
  pool.reserve(parents.size() + offspring.size());
  auto add = [&](std::vector<Partition>& group, bool is_parent) {
    for (auto& p : group) {
      if (!p.cached_q()) throw std::invalid_argument("selection candidate has no cached Q");
      auto canonical = canonical_labels(p.labels());
      pool.push_back({std::move(p), is_parent, std::move(canonical)});
    }
  };
  add(parents, true);
  add(offspring, false);
  if (mu > pool.size()) throw std::invalid_argument("mu exceeds the number of candidates");

  std::stable_sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
    const double qa = *a.individual.cached_q(), qb = *b.individual.cached_q();
    if (qa != qb) return qa > qb;
    if (a.parent != b.parent) return a.parent;
    return a.canonical < b.canonical;
  });
  std::vector<Partition> survivors;
  survivors.reserve(mu);
  for (std::size_t i = 0; i < mu; ++i) survivors.push_back(std::move(pool[i].individual));
  return survivors;
}

RunReport run(const Graph& g, const GaConfig& cfg) {
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();

  auto population = mu_plus_lambda_select(init_population(g, cfg.mu, cfg.walk_length, cfg.seed, cfg.threads),
                                          {}, cfg.mu);
  const EnsembleCrossover recombine(g);

  RunReport report;
  report.seed = cfg.seed;
  double best_q = population.front().q();
  report.q_trace.push_back(best_q);
  std::size_t stall = 0;
  std::size_t generation = 0;

  for (;;) {
    ++generation;
    std::vector<Partition> offspring(cfg.lambda);
    parallel_for(cfg.lambda, cfg.threads, [&](std::size_t i) {
      Rng rng = Rng::derived(cfg.seed, {generation, i});
      const auto parents = select_parents(population, cfg.ensemble_size, cfg.tournament_size, rng);
      offspring[i] = mutate(g, recombine(parents), cfg.mutation_rate, rng);
    });
    population = mu_plus_lambda_select(std::move(population), std::move(offspring), cfg.mu);

    const double q = population.front().q();
    report.q_trace.push_back(q);
    if (q > best_q + kImprovementEps) {
      best_q = q;
      stall = 0;
    } else {
      ++stall;
    }
    if (stall >= cfg.stall_generations) {
      report.terminated_by = Termination::stall;
      break;
    }
    if (generation >= cfg.max_generations) {
      report.terminated_by = Termination::max_generations;
      break;
    }
  }

  report.best = population.front();
  report.best_q = report.best.q();
  report.generations_run = generation;
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace gael
