#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gael/graph.hpp"
#include "gael/partition.hpp"
#include "gael/rng.hpp"

namespace gael {

struct GaConfig {
  std::size_t mu = 100;               // parent population size
  std::size_t lambda = 100;           // offspring per generation
  std::size_t ensemble_size = 10;     // parents per crossover (M)
  std::size_t tournament_size = 2;
  unsigned walk_length = 3;
  double mutation_rate = 0.1;         // fraction of nodes relabelled per offspring
  std::size_t stall_generations = 30;
  std::size_t max_generations = 300;
  std::uint64_t seed = 1;
  unsigned threads = 1;               // 0 = hardware concurrency

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

enum class Termination { stall, max_generations };

std::string to_string(Termination t);

struct RunReport {
  Partition best;
  double best_q = 0.0;
  /// Best Q of the initial population followed by one entry per generation.
  std::vector<double> q_trace;
  std::size_t generations_run = 0;
  Termination terminated_by = Termination::stall;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
};

/// Neighbor-majority local search on ceil(rate * n) distinct random nodes,
/// applied one after another so later nodes see earlier moves. Ties between
/// equally frequent neighbor labels are broken uniformly at random; isolated
/// nodes keep their label. Returns the canonical, evaluated result.
Partition mutate(const Graph& g, const Partition& p, double rate, Rng& rng);

/// The mu best of parents ∪ offspring by cached Q. Ties prefer parents, then
/// the lexicographically smaller canonical form. Result is sorted best first.
std::vector<Partition> mu_plus_lambda_select(std::vector<Partition> parents,
                                             std::vector<Partition> offspring, std::size_t mu);

/// The full genetic algorithm. Offspring i of generation t draws from the
/// sub-stream (seed, t, i), so reports are identical for any thread count.
RunReport run(const Graph& g, const GaConfig& cfg);

}  // namespace gael
