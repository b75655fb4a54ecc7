#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gael/graph.hpp"

namespace gael {

using Label = std::uint32_t;
using CommunityId = std::uint32_t;

/// A complete, non-overlapping division of nodes: one community label per node.
///
/// Labels are plain identifiers; two partitions describe the same division iff
/// their canonical forms are equal. A partition is immutable once built except
/// for its cached modularity, which evaluate() fills in.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<Label> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  std::span<const Label> labels() const noexcept { return labels_; }
  Label label(NodeId v) const { return labels_[v]; }
  std::size_t community_count() const noexcept { return community_count_; }

  std::optional<double> cached_q() const noexcept { return cached_q_; }
  /// Cached Q; throws std::logic_error if the partition was never evaluated.
  double q() const;
  /// Computes and caches modularity against g.
  Partition& evaluate(const Graph& g);

  /// Labels only; the cached Q does not take part.
  friend bool operator==(const Partition& a, const Partition& b) { return a.labels_ == b.labels_; }

  friend Partition canonicalize(const Partition& p);

 private:
  std::vector<Label> labels_;
  std::size_t community_count_ = 0;
  std::optional<double> cached_q_;
};

/// Relabels communities 0, 1, 2, ... in order of first appearance by node id.
/// Keeps the cached Q.
Partition canonicalize(const Partition& p);
std::vector<Label> canonical_labels(std::span<const Label> labels);

/// Per-community tallies behind Q = sum_i (e_ii - a_i^2), where
/// e_ii = intra_edges_i / m and a_i = degree_sum_i / 2m.
///
/// Community ids are the canonical labels of the partition it was built from.
/// Merging folds one community into another and leaves the absorbed id empty.
class ModularityState {
 public:
  ModularityState(const Graph& g, const Partition& p);
  /// Every node in its own community.
  static ModularityState singletons(const Graph& g);

  std::size_t edge_count() const noexcept { return m_; }
  std::size_t community_slots() const noexcept { return intra_edges_.size(); }
  std::size_t intra_edges(CommunityId c) const { return intra_edges_.at(c); }
  std::size_t degree_sum(CommunityId c) const { return degree_sum_.at(c); }
  bool live(CommunityId c) const { return c < live_.size() && live_[c]; }
  std::size_t live_count() const noexcept { return live_count_; }

  double q() const;

  /// Folds `from` into `into`. cross_edges is the number of edges between them.
  void merge(CommunityId into, CommunityId from, std::size_t cross_edges);

 private:
  ModularityState() = default;

  std::size_t m_ = 0;
  std::vector<std::size_t> intra_edges_;
  std::vector<std::size_t> degree_sum_;
  std::vector<bool> live_;
  std::size_t live_count_ = 0;
};

/// Newman-Girvan modularity. Zero for a graph without edges.
/// Throws std::invalid_argument if the partition length differs from n.
double modularity(const Graph& g, const Partition& p);
double modularity(const Graph& g, std::span<const Label> labels);

/// Q(after merging c1 and c2) - Q(before), in O(1).
/// Throws std::invalid_argument if c1 == c2 or either is not live.
double merge_delta_q(const ModularityState& state, CommunityId c1, CommunityId c2,
                     std::size_t cross_edges);

/// Fraction of nodes correctly classified under the maximum-overlap one-to-one
/// matching of predicted to true communities. Surplus predicted communities
/// stay unmatched. Throws std::invalid_argument on a length mismatch.
double accuracy(const Partition& predicted, const Partition& truth);

/// Reads "token<TAB>label" lines (any whitespace accepted) against g's token
/// map. Labels are arbitrary tokens, numbered by first appearance. Throws
/// DataError on unknown tokens, repeated nodes, or nodes left unassigned.
Partition read_partition(std::istream& in, const Graph& g);
Partition read_partition_file(const std::string& path, const Graph& g);

void write_partition(std::ostream& out, const Graph& g, const Partition& p);

}  // namespace gael
