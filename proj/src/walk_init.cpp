#include "gael/walk_init.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "gael/parallel.hpp"

namespace gael {

namespace {

// A cut must raise Q by more than this to count as an improvement.
constexpr double kMinGain = 1e-12;

enum Mark : unsigned char { kOutside = 0, kRest = 1, kTop = 2 };

struct PrefixScan {
  std::size_t k = 0;  // prefix length
  double q = 0.0;
};

/// Best prefix split of `ranking`, which must be exactly one community of the
/// current division with global modularity `current_q`. `mark` is an
/// all-kOutside scratch buffer of size n and is restored before returning.
std::optional<PrefixScan> scan_prefixes(const Graph& g, std::span<const NodeId> ranking,
                                        std::vector<unsigned char>& mark, double current_q) {
  if (ranking.size() < 2 || g.edge_count() == 0) return std::nullopt;
  const double m = static_cast<double>(g.edge_count());
  const double two_m = 2.0 * m;
  auto contribution = [&](double intra, double degree_sum) {
    const double a = degree_sum / two_m;
    return intra / m - a * a;
  };

  for (NodeId v : ranking) mark[v] = kRest;
  double intra_rest = 0.0, degree_rest = 0.0;
  for (NodeId v : ranking) {
    degree_rest += static_cast<double>(g.degree(v));
    for (NodeId w : g.neighbors(v))
      if (w > v && mark[w] == kRest) intra_rest += 1.0;
  }
  const double base = current_q - contribution(intra_rest, degree_rest);
  double intra_top = 0.0, degree_top = 0.0;

  std::optional<PrefixScan> best;
  double best_q = current_q + kMinGain;
  for (std::size_t k = 1; k < ranking.size(); ++k) {
    const NodeId v = ranking[k - 1];
    double to_top = 0.0, to_rest = 0.0;
    for (NodeId w : g.neighbors(v)) {
      if (mark[w] == kTop) to_top += 1.0;
      else if (mark[w] == kRest && w != v) to_rest += 1.0;
    }
    mark[v] = kTop;
    intra_top += to_top;
    intra_rest -= to_rest;
    const double d = static_cast<double>(g.degree(v));
    degree_top += d;
    degree_rest -= d;
    const double q = base + contribution(intra_top, degree_top) + contribution(intra_rest, degree_rest);
    if (q > best_q) {
      best_q = q;
      best = PrefixScan{k, q};
    }
  }
  for (NodeId v : ranking) mark[v] = kOutside;
  return best;
}

void check_members(const Graph& g, std::span<const NodeId> members) {
  for (NodeId v : members)
    if (v >= g.node_count()) throw std::invalid_argument("member " + std::to_string(v) + " out of range");
}

}  // namespace

ArrivalVector arrival_probabilities(const Graph& g, std::span<const NodeId> members, NodeId destination,
                                    unsigned steps) {
  if (steps == 0) throw std::invalid_argument("walk length must be at least 1");
  check_members(g, members);
  if (std::find(members.begin(), members.end(), destination) == members.end())
    throw std::invalid_argument("destination " + std::to_string(destination) + " is not a member");

  const std::size_t n = g.node_count();
  std::vector<unsigned char> inside(n, 0);
  for (NodeId v : members) inside[v] = 1;
  std::vector<double> inv_degree(n, 0.0);
  for (NodeId v : members) {
    std::size_t d = 0;
    for (NodeId w : g.neighbors(v)) d += inside[w];
    if (d > 0) inv_degree[v] = 1.0 / static_cast<double>(d);
  }

  ArrivalVector out{destination, steps, std::vector<double>(n, 0.0)};
  out.prob[destination] = 1.0;
  std::vector<double> next(n, 0.0);
  for (unsigned s = 0; s < steps; ++s) {
    for (NodeId i : members) {
      if (i == destination) {
        next[i] = 1.0;
        continue;
      }
      double sum = 0.0;
      for (NodeId j : g.neighbors(i))
        if (inside[j]) sum += out.prob[j];
      next[i] = sum * inv_degree[i];
    }
    for (NodeId i : members) out.prob[i] = next[i];
  }
  return out;
}

std::vector<NodeId> rank_by_arrival(const ArrivalVector& arrival, std::span<const NodeId> members) {
  std::vector<NodeId> ranking(members.begin(), members.end());
  std::sort(ranking.begin(), ranking.end(), [&](NodeId a, NodeId b) {
    if (arrival.prob[a] != arrival.prob[b]) return arrival.prob[a] > arrival.prob[b];
    return a < b;
  });
  return ranking;
}

std::optional<Cutoff> best_cutoff(const Graph& g, std::span<const NodeId> ranking, const Partition& context) {
  if (context.size() != g.node_count()) throw std::invalid_argument("context does not cover the graph");
  check_members(g, ranking);
  if (ranking.size() < 2) return std::nullopt;
  const Label community = context.label(ranking.front());
  const auto in_community = static_cast<std::size_t>(
      std::count(context.labels().begin(), context.labels().end(), community));
  const bool same = std::all_of(ranking.begin(), ranking.end(),
                                [&](NodeId v) { return context.label(v) == community; });
  if (!same || in_community != ranking.size())
    throw std::invalid_argument("ranking must be exactly one community of the context");

  const double current_q = context.cached_q().value_or(modularity(g, context));
  std::vector<unsigned char> mark(g.node_count(), kOutside);
  const auto scan = scan_prefixes(g, ranking, mark, current_q);
  if (!scan) return std::nullopt;
  const auto split = ranking.begin() + static_cast<std::ptrdiff_t>(scan->k);
  return Cutoff{{ranking.begin(), split}, {split, ranking.end()}, scan->q};
}

Partition igmrw_generate(const Graph& g, unsigned steps, Rng& rng, std::vector<double>* accepted_q) {
  const std::size_t n = g.node_count();
  std::vector<Label> labels(n, 0);
  double q = 0.0;
  if (accepted_q) accepted_q->assign(1, q);

  std::vector<unsigned char> mark(n, kOutside);
  Label next_label = 1;
  std::vector<std::vector<NodeId>> pending;
  pending.emplace_back(n);
  for (NodeId v = 0; v < n; ++v) pending.back()[v] = v;

  while (!pending.empty()) {
    std::vector<NodeId> members = std::move(pending.back());
    pending.pop_back();
    if (members.size() < 2) continue;
    const NodeId t = members[rng.uniform_index(members.size())];
    const auto ranking = rank_by_arrival(arrival_probabilities(g, members, t, steps), members);
    const auto scan = scan_prefixes(g, ranking, mark, q);
    if (!scan) continue;

    const auto split = ranking.begin() + static_cast<std::ptrdiff_t>(scan->k);
    std::vector<NodeId> top(ranking.begin(), split);
    std::vector<NodeId> rest(split, ranking.end());
    for (NodeId v : top) labels[v] = next_label;
    ++next_label;
    q = scan->q;
    if (accepted_q) accepted_q->push_back(q);
    pending.push_back(std::move(rest));
    pending.push_back(std::move(top));
  }

  Partition out(canonical_labels(labels));
  out.evaluate(g);
  return out;
}

std::vector<Partition> init_population(const Graph& g, std::size_t size, unsigned steps, std::uint64_t seed,
                                       unsigned threads) {
  if (size < 2) throw std::invalid_argument("population size must be at least 2");
  std::vector<Partition> population(size);
  parallel_for(size, threads, [&](std::size_t i) {
    Rng rng = Rng::derived(seed, {0, i});
    population[i] = igmrw_generate(g, steps, rng);
  });
  return population;
}

}  // namespace gael
