#include "gael/crossover.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gael {

namespace {

void check_parents(const Graph& g, std::span<const Partition> parents) {
  if (parents.empty()) throw std::invalid_argument("crossover needs at least one parent");
  for (const auto& p : parents)
    if (p.size() != g.node_count())
      throw std::invalid_argument("parent covers " + std::to_string(p.size()) + " nodes, graph has " +
                                  std::to_string(g.node_count()));
}

/// |Γ(v) ∩ Γ(w)|, |Γ(v)|, |Γ(w)| for an edge. For adjacent v and w both
/// endpoints lie in both closed neighborhoods.
struct Overlap {
  std::size_t shared;
  std::size_t gamma_v;
  std::size_t gamma_w;
};

Overlap closed_overlap(const Graph& g, Edge e) {
  const auto a = g.neighbors(e.first);
  const auto b = g.neighbors(e.second);
  std::size_t common = 0;
  for (auto i = a.begin(), j = b.begin(); i != a.end() && j != b.end();) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else {
      ++common;
      ++i;
      ++j;
    }
  }
  return {common + 2, a.size() + 1, b.size() + 1};
}

double similarity_of(const Overlap& o) {
  return static_cast<double>(o.shared) / std::sqrt(static_cast<double>(o.gamma_v) * static_cast<double>(o.gamma_w));
}

/// Exact σ(x) > σ(y) via s_x² · (v_y · w_y) > s_y² · (v_x · w_x).
bool more_similar(const Overlap& x, const Overlap& y) {
  using u128 = __uint128_t;
  const u128 lhs = static_cast<u128>(x.shared) * x.shared * y.gamma_v * y.gamma_w;
  const u128 rhs = static_cast<u128>(y.shared) * y.shared * x.gamma_v * x.gamma_w;
  return lhs > rhs;
}

std::vector<std::size_t> intra_counts(const Graph& g, std::span<const Partition> parents) {
  check_parents(g, parents);
  const auto edges = g.edges();
  std::vector<std::size_t> count(edges.size(), 0);
  for (const auto& p : parents)
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (p.label(edges[i].first) == p.label(edges[i].second)) ++count[i];
  return count;
}

}  // namespace

std::vector<double> edge_join_strengths(const Graph& g, std::span<const Partition> parents) {
  const auto counts = intra_counts(g, parents);
  const double m = static_cast<double>(parents.size());
  std::vector<double> out(counts.size());
  std::transform(counts.begin(), counts.end(), out.begin(),
                 [m](std::size_t k) { return static_cast<double>(k) / m; });
  return out;
}

double edge_structural_similarity(const Graph& g, Edge e) {
  if (e.first >= g.node_count() || e.second >= g.node_count() || !g.has_edge(e.first, e.second))
    throw std::invalid_argument("(" + std::to_string(e.first) + ", " + std::to_string(e.second) +
                                ") is not an edge");
  return similarity_of(closed_overlap(g, e));
}

std::vector<double> edge_similarities(const Graph& g) {
  std::vector<double> out;
  out.reserve(g.edge_count());
  for (const auto& e : g.edges()) out.push_back(similarity_of(closed_overlap(g, e)));
  return out;
}

EnsembleCrossover::EnsembleCrossover(const Graph& g) : graph_(&g) {
  const auto edges = g.edges();
  std::vector<Overlap> overlap;
  overlap.reserve(edges.size());
  similarity_.reserve(edges.size());
  for (const auto& e : edges) {
    overlap.push_back(closed_overlap(g, e));
    similarity_.push_back(similarity_of(overlap.back()));
  }
  similarity_order_.resize(edges.size());
  std::iota(similarity_order_.begin(), similarity_order_.end(), std::size_t{0});
  std::stable_sort(similarity_order_.begin(), similarity_order_.end(),
                   [&](std::size_t a, std::size_t b) { return more_similar(overlap[a], overlap[b]); });
}

std::vector<std::size_t> EnsembleCrossover::edge_order(std::span<const Partition> parents) const {
  const auto counts = intra_counts(*graph_, parents);
  // Counting sort on the intra count keeps the similarity order within a level.
  const std::size_t levels = parents.size() + 1;
  std::vector<std::size_t> start(levels + 1, 0);
  for (std::size_t k : counts) ++start[parents.size() - k + 1];
  std::partial_sum(start.begin(), start.end(), start.begin());
  std::vector<std::size_t> order(counts.size());
  for (std::size_t e : similarity_order_) order[start[parents.size() - counts[e]]++] = e;
  return order;
}

std::vector<EdgeScore> EnsembleCrossover::scored_order(std::span<const Partition> parents) const {
  const auto strength = edge_join_strengths(*graph_, parents);
  std::vector<EdgeScore> out;
  for (std::size_t e : edge_order(parents))
    out.push_back({graph_->edges()[e], strength[e], similarity_[e]});
  return out;
}

Partition EnsembleCrossover::operator()(std::span<const Partition> parents, std::vector<double>* trace) const {
  const Graph& g = *graph_;
  const auto order = edge_order(parents);
  const auto edges = g.edges();
  const std::size_t n = g.node_count();

  std::vector<CommunityId> community(n);
  std::iota(community.begin(), community.end(), CommunityId{0});
  std::vector<std::vector<NodeId>> members(n);
  for (NodeId v = 0; v < n; ++v) members[v] = {v};
  ModularityState state = ModularityState::singletons(g);

  // Q scaled by 4m^2 is the integer 4m * intra - sum(degree_sum^2), which
  // gives an exact comparison between visited divisions.
  const auto m = static_cast<long long>(g.edge_count());
  long long scaled_q = 0;
  for (NodeId v = 0; v < n; ++v) scaled_q -= static_cast<long long>(g.degree(v) * g.degree(v));

  double q = state.q();
  if (trace) trace->assign(1, q);
  long long best_scaled = scaled_q;
  std::size_t best_merges = 0;
  std::vector<std::size_t> merged_edges;
  merged_edges.reserve(n);

  for (std::size_t e : order) {
    CommunityId into = community[edges[e].first];
    CommunityId from = community[edges[e].second];
    if (into == from) continue;
    if (members[into].size() < members[from].size()) std::swap(into, from);
    std::size_t cross = 0;
    for (NodeId x : members[from])
      for (NodeId y : g.neighbors(x)) cross += community[y] == into;

    q += merge_delta_q(state, into, from, cross);
    scaled_q += 4 * m * static_cast<long long>(cross) -
                2 * static_cast<long long>(state.degree_sum(into) * state.degree_sum(from));
    state.merge(into, from, cross);
    for (NodeId x : members[from]) community[x] = into;
    members[into].insert(members[into].end(), members[from].begin(), members[from].end());
    members[from].clear();
    merged_edges.push_back(e);
    if (trace) trace->push_back(q);
    if (scaled_q > best_scaled) {
      best_scaled = scaled_q;
      best_merges = merged_edges.size();
    }
  }

  // Replay the prefix of merges that produced the best division.
  std::vector<NodeId> parent(n);
  std::iota(parent.begin(), parent.end(), NodeId{0});
  auto find = [&](NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < best_merges; ++i) {
    const NodeId a = find(edges[merged_edges[i]].first);
    const NodeId b = find(edges[merged_edges[i]].second);
    parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<Label> labels(n);
  for (NodeId v = 0; v < n; ++v) labels[v] = find(v);
  Partition child(canonical_labels(labels));
  child.evaluate(g);
  return child;
}

Partition crossover(const Graph& g, std::span<const Partition> parents) {
  return EnsembleCrossover(g)(parents);
}

std::vector<Partition> select_parents(std::span<const Partition> population, std::size_t m, std::size_t k,
                                      Rng& rng) {
  const std::size_t size = population.size();
  if (m < 1 || m >= size)
    throw std::invalid_argument("ensemble size must satisfy 1 <= M < population size (M=" + std::to_string(m) +
                                ", population=" + std::to_string(size) + ")");
  if (k < 1 || k > size) throw std::invalid_argument("tournament size must lie in [1, population size]");
  for (const auto& p : population)
    if (!p.cached_q()) throw std::invalid_argument("tournament contestant has no cached Q");

  std::vector<std::size_t> pool(size);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  std::vector<Partition> winners;
  winners.reserve(m);
  for (std::size_t t = 0; t < m; ++t) {
    // Partial Fisher-Yates: the first k slots become a uniform k-subset.
    std::size_t best = size;
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(pool[i], pool[i + rng.uniform_index(size - i)]);
      if (best == size || *population[pool[i]].cached_q() > *population[best].cached_q()) best = pool[i];
    }
    winners.push_back(population[best]);
  }
  return winners;
}

}  // namespace gael
