#include "gael/graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <string_view>
#include <unordered_map>

#include "gael/partition.hpp"

namespace gael {

Graph::Graph(std::size_t n, std::vector<Edge> edges, std::vector<std::string> tokens)
    : edges_(std::move(edges)), tokens_(std::move(tokens)) {
  for (auto& e : edges_) {
    if (e.first >= n || e.second >= n) throw std::invalid_argument("edge endpoint out of range");
    if (e.first == e.second) throw std::invalid_argument("self-loop on node " + std::to_string(e.first));
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw std::invalid_argument("duplicate edge");

  if (tokens_.empty()) {
    tokens_.reserve(n);
    for (std::size_t v = 0; v < n; ++v) tokens_.push_back(std::to_string(v));
  } else if (tokens_.size() != n) {
    throw std::invalid_argument("token count does not match node count");
  }

  degree_.assign(n, 0);
  for (const auto& e : edges_) {
    ++degree_[e.first];
    ++degree_[e.second];
  }
  offsets_.assign(n + 1, 0);
  std::partial_sum(degree_.begin(), degree_.end(), offsets_.begin() + 1);
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted, so each neighbor list comes out sorted as well.
  for (const auto& e : edges_) adjacency_[fill[e.first]++] = e.second;
  for (const auto& e : edges_) adjacency_[fill[e.second]++] = e.first;
  for (std::size_t v = 0; v < n; ++v)
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));

  token_index_.reserve(n);
  for (std::size_t v = 0; v < n; ++v) token_index_.emplace_back(tokens_[v], static_cast<NodeId>(v));
  std::sort(token_index_.begin(), token_index_.end());
  for (std::size_t i = 1; i < token_index_.size(); ++i)
    if (token_index_[i].first == token_index_[i - 1].first)
      throw std::invalid_argument("duplicate node token '" + token_index_[i].first + "'");
}

bool Graph::has_edge(NodeId v, NodeId w) const { return edge_index(v, w) != edges_.size(); }

std::size_t Graph::edge_index(NodeId v, NodeId w) const {
  if (v > w) std::swap(v, w);
  const Edge key{v, w};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return edges_.size();
  return static_cast<std::size_t>(it - edges_.begin());
}

NodeId Graph::find_token(const std::string& token) const {
  auto it = std::lower_bound(token_index_.begin(), token_index_.end(), token,
                             [](const auto& entry, const std::string& t) { return entry.first < t; });
  if (it == token_index_.end() || it->first != token) return static_cast<NodeId>(node_count());
  return it->second;
}

namespace {

bool is_separator(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_separator(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_separator(line[j])) ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

bool valid_token(std::string_view token) {
  return std::none_of(token.begin(), token.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return u < 0x20 || u == 0x7f;
  });
}

[[noreturn]] void fail_at(std::size_t line_no, const std::string& what) {
  throw DataError("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Graph load_edge_list(std::istream& in, EdgeListStats* stats) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> tokens;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  std::string line;

  auto intern = [&](std::string_view token) {
    auto [it, inserted] = ids.try_emplace(std::string(token), static_cast<NodeId>(tokens.size()));
    if (inserted) tokens.emplace_back(token);
    return it->second;
  };

  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty() || fields.front().front() == '#') continue;
    if (fields.size() != 2)
      fail_at(line_no, "expected two node tokens, found " + std::to_string(fields.size()));
    if (!valid_token(fields[0]) || !valid_token(fields[1])) fail_at(line_no, "control character in node token");
    if (fields[0] == fields[1]) fail_at(line_no, "self-loop on '" + std::string(fields[0]) + "'");
    const NodeId a = intern(fields[0]);
    const NodeId b = intern(fields[1]);
    edges.push_back({std::min(a, b), std::max(a, b)});
  }
  if (in.bad()) throw DataError("read error after line " + std::to_string(line_no));
  if (edges.empty()) throw DataError("edge list contains no edges");

  std::sort(edges.begin(), edges.end());
  const auto unique_end = std::unique(edges.begin(), edges.end());
  const auto duplicates = static_cast<std::size_t>(edges.end() - unique_end);
  edges.erase(unique_end, edges.end());

  if (stats) {
    stats->lines = line_no;
    stats->duplicate_edges = duplicates;
  }
  const std::size_t n = tokens.size();
  return Graph(n, std::move(edges), std::move(tokens));
}

Graph load_edge_list_file(const std::string& path, EdgeListStats* stats) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return load_edge_list(in, stats);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const auto& e : g.edges()) out << g.token(e.first) << ' ' << g.token(e.second) << '\n';
}

std::vector<NodeId> closed_neighborhood(const Graph& g, NodeId v) {
  if (v >= g.node_count()) throw std::out_of_range("node " + std::to_string(v) + " out of range");
  const auto nbrs = g.neighbors(v);
  std::vector<NodeId> out;
  out.reserve(nbrs.size() + 1);
  auto pos = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  out.insert(out.end(), nbrs.begin(), pos);
  out.push_back(v);
  out.insert(out.end(), pos, nbrs.end());
  return out;
}

namespace {

constexpr std::array<const char*, 12> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78"};

std::string community_color(std::size_t c) {
  if (c < kPalette.size()) return kPalette[c];
  // Golden-angle hue walk for anything past the fixed palette.
  const double hue = std::fmod(static_cast<double>(c) * 0.618033988749895, 1.0);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f 0.550 0.900", hue);
  return buf;
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

void write_dot(std::ostream& out, const Graph& g, const Partition& p) {
  if (p.size() != g.node_count())
    throw std::invalid_argument("partition covers " + std::to_string(p.size()) + " nodes, graph has " +
                                std::to_string(g.node_count()));
  const auto canon = canonical_labels(p.labels());
  out << "graph communities {\n  node [style=filled];\n";
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out << "  n" << v << " [label=" << dot_quote(g.token(v))
        << ", community=" << canon[v] << ", fillcolor=" << dot_quote(community_color(canon[v])) << "];\n";
  }
  for (const auto& e : g.edges()) out << "  n" << e.first << " -- n" << e.second << ";\n";
  out << "}\n";
}

std::size_t connected_components(const Graph& g) {
  std::vector<NodeId> parent(g.node_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = g.node_count();
  for (const auto& e : g.edges()) {
    const NodeId a = find(e.first), b = find(e.second);
    if (a != b) {
      parent[std::max(a, b)] = std::min(a, b);
      --components;
    }
  }
  return components;
}

}  // namespace gael
