#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gael/graph.hpp"
#include "gael/partition.hpp"
#include "gael/rng.hpp"

namespace gael {

struct EdgeScore {
  Edge edge;
  double join_strength = 0.0;  // k_vw / M
  double similarity = 0.0;
};

/// Fraction of parents that place each edge inside one community, aligned
/// with g.edges(). Throws std::invalid_argument for an empty parent list or a
/// parent that does not cover the graph.
std::vector<double> edge_join_strengths(const Graph& g, std::span<const Partition> parents);

/// |Γ(v) ∩ Γ(w)| / sqrt(|Γ(v)| |Γ(w)|) over closed neighborhoods.
/// Throws std::invalid_argument if {v, w} is not an edge of g.
double edge_structural_similarity(const Graph& g, Edge e);

/// Structural similarity of every edge, aligned with g.edges().
std::vector<double> edge_similarities(const Graph& g);

/// Consensus crossover over M parent divisions.
///
/// Edges are ordered by descending join strength, then descending structural
/// similarity, then ascending (v, w). Starting from singletons, each edge that
/// joins two communities merges them; the visited division with the highest
/// modularity (earliest on ties, the singleton state included) becomes the
/// child. The graph-only part of the ordering is computed once at construction.
/// The operator keeps a reference to g.
class EnsembleCrossover {
 public:
  explicit EnsembleCrossover(const Graph& g);

  /// Merge sequence X as indices into g.edges().
  std::vector<std::size_t> edge_order(std::span<const Partition> parents) const;
  std::vector<EdgeScore> scored_order(std::span<const Partition> parents) const;

  /// Canonical child with cached Q. If `trace` is given it receives Q of every
  /// visited division, singletons first.
  Partition operator()(std::span<const Partition> parents, std::vector<double>* trace = nullptr) const;

  std::span<const double> similarities() const noexcept { return similarity_; }

 private:
  const Graph* graph_;
  std::vector<double> similarity_;
  std::vector<std::size_t> similarity_order_;  // edges by σ desc, index asc
};

Partition crossover(const Graph& g, std::span<const Partition> parents);

/// M tournaments of size k. Each draws k distinct individuals uniformly and
/// keeps the one with the highest cached Q (first drawn on ties). Throws
/// std::invalid_argument unless 1 <= M < |population| and 1 <= k <= |population|,
/// or if a contestant has no cached Q.
std::vector<Partition> select_parents(std::span<const Partition> population, std::size_t m,
                                      std::size_t k, Rng& rng);

}  // namespace gael
