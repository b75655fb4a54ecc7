#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gael/graph.hpp"
#include "gael/partition.hpp"
#include "gael/rng.hpp"

namespace gael {

/// Probability that a random walker started at each node reaches `destination`
/// within `steps` moves, the walk being confined to a member subset.
struct ArrivalVector {
  NodeId destination = 0;
  unsigned steps = 0;
  std::vector<double> prob;  // indexed by node id; zero outside the members
};

/// Iterates P^s(i) = sum_{j in N(i) ∩ members} P^{s-1}(j) / d_in(i) for
/// i != t, with P^s(t) = 1, starting from the indicator of t. d_in is the
/// degree inside the members. A member without neighbors inside the subset
/// stays at probability 0.
/// Throws std::invalid_argument if t is not a member or steps == 0.
ArrivalVector arrival_probabilities(const Graph& g, std::span<const NodeId> members,
                                    NodeId destination, unsigned steps);

/// Members sorted by descending arrival probability, ties by ascending id.
std::vector<NodeId> rank_by_arrival(const ArrivalVector& arrival, std::span<const NodeId> members);

struct Cutoff {
  std::vector<NodeId> top;   // ranking prefix
  std::vector<NodeId> rest;  // remaining suffix
  double new_q = 0.0;
};

/// Scans every prefix split of `ranking` (all nodes of one community of
/// `context`) and returns the split giving the largest global modularity,
/// provided it strictly beats the current Q. Ties go to the shortest prefix.
/// Returns nullopt for fewer than two members or when no split improves Q.
std::optional<Cutoff> best_cutoff(const Graph& g, std::span<const NodeId> ranking,
                                  const Partition& context);

/// One individual by recursive random-walk bisection. Every connected piece
/// is split while some cutoff raises global modularity; each recursive call
/// draws a fresh destination from its own sub-network. If `accepted_q` is
/// given, it receives Q after every accepted cut, starting from the
/// one-community Q of 0.
Partition igmrw_generate(const Graph& g, unsigned steps, Rng& rng,
                         std::vector<double>* accepted_q = nullptr);

/// `size` independent individuals; individual i draws from the sub-stream
/// (seed, i) so the result is independent of the thread count.
/// Throws std::invalid_argument if size < 2.
std::vector<Partition> init_population(const Graph& g, std::size_t size, unsigned steps,
                                       std::uint64_t seed, unsigned threads = 1);

}  // namespace gael
