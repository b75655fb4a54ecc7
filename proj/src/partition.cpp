#include "gael/partition.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace gael {

Partition::Partition(std::vector<Label> labels) : labels_(std::move(labels)) {
  std::vector<Label> distinct(labels_);
  std::sort(distinct.begin(), distinct.end());
  community_count_ = static_cast<std::size_t>(std::unique(distinct.begin(), distinct.end()) - distinct.begin());
}

double Partition::q() const {
  if (!cached_q_) throw std::logic_error("partition has no cached modularity");
  return *cached_q_;
}

Partition& Partition::evaluate(const Graph& g) {
  cached_q_ = modularity(g, labels_);
  return *this;
}

std::vector<Label> canonical_labels(std::span<const Label> labels) {
  std::unordered_map<Label, Label> remap;
  std::vector<Label> out;
  out.reserve(labels.size());
  for (Label l : labels) {
    auto [it, inserted] = remap.try_emplace(l, static_cast<Label>(remap.size()));
    out.push_back(it->second);
  }
  return out;
}

Partition canonicalize(const Partition& p) {
  Partition out(canonical_labels(p.labels()));
  // Q is invariant under relabelling, so the cache carries over.
  out.cached_q_ = p.cached_q_;
  return out;
}

ModularityState::ModularityState(const Graph& g, const Partition& p) {
  if (p.size() != g.node_count())
    throw std::invalid_argument("partition covers " + std::to_string(p.size()) + " nodes, graph has " +
                                std::to_string(g.node_count()));
  const auto canon = canonical_labels(p.labels());
  const std::size_t k = p.community_count();
  m_ = g.edge_count();
  intra_edges_.assign(k, 0);
  degree_sum_.assign(k, 0);
  live_.assign(k, true);
  live_count_ = k;
  for (NodeId v = 0; v < g.node_count(); ++v) degree_sum_[canon[v]] += g.degree(v);
  for (const auto& e : g.edges())
    if (canon[e.first] == canon[e.second]) ++intra_edges_[canon[e.first]];
}

ModularityState ModularityState::singletons(const Graph& g) {
  ModularityState s;
  const std::size_t n = g.node_count();
  s.m_ = g.edge_count();
  s.intra_edges_.assign(n, 0);
  s.degree_sum_.assign(g.degrees().begin(), g.degrees().end());
  s.live_.assign(n, true);
  s.live_count_ = n;
  return s;
}

double ModularityState::q() const {
  if (m_ == 0) return 0.0;
  const double m = static_cast<double>(m_);
  const double two_m = 2.0 * m;
  double q = 0.0;
  for (std::size_t c = 0; c < intra_edges_.size(); ++c) {
    if (!live_[c]) continue;
    const double a = static_cast<double>(degree_sum_[c]) / two_m;
    q += static_cast<double>(intra_edges_[c]) / m - a * a;
  }
  return q;
}

void ModularityState::merge(CommunityId into, CommunityId from, std::size_t cross_edges) {
  if (into == from) throw std::invalid_argument("cannot merge a community with itself");
  if (!live(into) || !live(from)) throw std::invalid_argument("merge of a dead or unknown community");
  intra_edges_[into] += intra_edges_[from] + cross_edges;
  degree_sum_[into] += degree_sum_[from];
  intra_edges_[from] = 0;
  degree_sum_[from] = 0;
  live_[from] = false;
  --live_count_;
}

double merge_delta_q(const ModularityState& state, CommunityId c1, CommunityId c2, std::size_t cross_edges) {
  if (c1 == c2) throw std::invalid_argument("merge_delta_q: communities must differ");
  if (!state.live(c1) || !state.live(c2)) throw std::invalid_argument("merge_delta_q: community not live");
  if (state.edge_count() == 0) return 0.0;
  const double m = static_cast<double>(state.edge_count());
  const double a1 = static_cast<double>(state.degree_sum(c1)) / (2.0 * m);
  const double a2 = static_cast<double>(state.degree_sum(c2)) / (2.0 * m);
  // (a1 + a2)^2 - a1^2 - a2^2 = 2 a1 a2
  return static_cast<double>(cross_edges) / m - 2.0 * a1 * a2;
}

double modularity(const Graph& g, std::span<const Label> labels) {
  if (labels.size() != g.node_count())
    throw std::invalid_argument("partition covers " + std::to_string(labels.size()) + " nodes, graph has " +
                                std::to_string(g.node_count()));
  return ModularityState(g, Partition(std::vector<Label>(labels.begin(), labels.end()))).q();
}

double modularity(const Graph& g, const Partition& p) { return modularity(g, p.labels()); }

namespace {

/// Maximum-weight perfect matching on a square matrix (Hungarian method,
/// potentials formulation). Returns the column assigned to each row.
std::vector<std::size_t> max_weight_assignment(const std::vector<std::vector<long long>>& weight) {
  const std::size_t n = weight.size();
  long long top = 0;
  for (const auto& row : weight)
    for (long long w : row) top = std::max(top, w);
  // Minimise cost = top - weight; arrays are 1-based with 0 as a sentinel.
  constexpr long long inf = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> u(n + 1, 0), v(n + 1, 0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<long long> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      long long delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const long long cur = (top - weight[i0 - 1][j - 1]) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(n);
  for (std::size_t j = 1; j <= n; ++j) row_to_col[match[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace

double accuracy(const Partition& predicted, const Partition& truth) {
  if (predicted.size() != truth.size())
    throw std::invalid_argument("accuracy: partitions cover " + std::to_string(predicted.size()) + " and " +
                                std::to_string(truth.size()) + " nodes");
  const std::size_t n = predicted.size();
  if (n == 0) return 1.0;
  const auto pred = canonical_labels(predicted.labels());
  const auto real = canonical_labels(truth.labels());
  const std::size_t dim = std::max(predicted.community_count(), truth.community_count());
  std::vector<std::vector<long long>> overlap(dim, std::vector<long long>(dim, 0));
  for (std::size_t v = 0; v < n; ++v) ++overlap[pred[v]][real[v]];
  const auto assignment = max_weight_assignment(overlap);
  long long matched = 0;
  for (std::size_t r = 0; r < dim; ++r) matched += overlap[r][assignment[r]];
  return static_cast<double>(matched) / static_cast<double>(n);
}

Partition read_partition(std::istream& in, const Graph& g) {
  const std::size_t n = g.node_count();
  constexpr Label unassigned = std::numeric_limits<Label>::max();
  std::vector<Label> labels(n, unassigned);
  std::unordered_map<std::string, Label> label_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string token, label, extra;
    if (!(fields >> token) || token.front() == '#') continue;
    if (!(fields >> label) || (fields >> extra))
      throw DataError("line " + std::to_string(line_no) + ": expected 'node<TAB>label'");
    const NodeId v = g.find_token(token);
    if (v == n) throw DataError("line " + std::to_string(line_no) + ": unknown node '" + token + "'");
    if (labels[v] != unassigned)
      throw DataError("line " + std::to_string(line_no) + ": node '" + token + "' assigned twice");
    labels[v] = label_ids.try_emplace(label, static_cast<Label>(label_ids.size())).first->second;
  }
  const auto missing = std::count(labels.begin(), labels.end(), unassigned);
  if (missing > 0)
    throw DataError("partition leaves " + std::to_string(missing) + " of " + std::to_string(n) +
                    " nodes unassigned");
  return Partition(std::move(labels));
}

Partition read_partition_file(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return read_partition(in, g);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void write_partition(std::ostream& out, const Graph& g, const Partition& p) {
  if (p.size() != g.node_count()) throw std::invalid_argument("partition does not cover the graph");
  for (NodeId v = 0; v < g.node_count(); ++v) out << g.token(v) << '\t' << p.label(v) << '\n';
}

}  // namespace gael
