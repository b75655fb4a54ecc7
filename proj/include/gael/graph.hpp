#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gael {

using NodeId = std::uint32_t;

/// Undirected edge stored with first < second.
struct Edge {
  NodeId first;
  NodeId second;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Malformed or inconsistent input data (bad edge list, partition file, ...).
/// The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Partition;

/// Immutable simple undirected graph on nodes 0..n-1.
///
/// Adjacency is stored CSR-style with each neighbor list sorted ascending.
/// The edge list is sorted lexicographically and every edge has first < second.
/// Original node tokens are retained for output only.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph on n nodes. Edges may come in either orientation.
  /// Throws std::invalid_argument on self-loops, duplicates, or ids >= n.
  /// Empty tokens means "use the decimal id".
  Graph(std::size_t n, std::vector<Edge> edges, std::vector<std::string> tokens = {});

  std::size_t node_count() const noexcept { return degree_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return degree_[v]; }
  std::span<const std::size_t> degrees() const noexcept { return degree_; }

  bool has_edge(NodeId v, NodeId w) const;
  /// Position of edge {v, w} in edges(), or edge_count() if absent.
  std::size_t edge_index(NodeId v, NodeId w) const;

  const std::string& token(NodeId v) const { return tokens_[v]; }
  std::span<const std::string> tokens() const noexcept { return tokens_; }
  /// Reverse token lookup; returns node_count() if the token is unknown.
  NodeId find_token(const std::string& token) const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<std::size_t> degree_;
  std::vector<std::string> tokens_;
  std::vector<std::pair<std::string, NodeId>> token_index_;  // sorted by token
};

struct EdgeListStats {
  std::size_t lines = 0;
  std::size_t duplicate_edges = 0;
};

/// Parses a whitespace-separated edge list. Lines starting with '#' and blank
/// lines are skipped. Tokens are densely renumbered in order of first
/// appearance; duplicates (in either orientation) are collapsed and counted.
/// Throws DataError carrying the offending line number for self-loops,
/// malformed lines, or an input with no edges.
Graph load_edge_list(std::istream& in, EdgeListStats* stats = nullptr);
Graph load_edge_list_file(const std::string& path, EdgeListStats* stats = nullptr);

/// One "token token" line per edge, in edge-list order.
void write_edge_list(std::ostream& out, const Graph& g);

/// Gamma(v): the neighbors of v plus v itself, sorted ascending.
std::vector<NodeId> closed_neighborhood(const Graph& g, NodeId v);

/// Graphviz rendering with nodes filled by community. Throws
/// std::invalid_argument if the partition does not cover the graph.
void write_dot(std::ostream& out, const Graph& g, const Partition& p);

/// Number of connected components (isolated nodes count as components).
std::size_t connected_components(const Graph& g);

}  // namespace gael
