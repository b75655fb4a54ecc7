#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "gael/rng.hpp"
#include "gael/walk_init.hpp"
#include "oracles.hpp"

namespace gael {
namespace {

std::string data_path(const std::string& name) { return std::string(GAEL_DATA_DIR) + "/" + name; }

std::vector<NodeId> all_nodes(const Graph& g) {
  std::vector<NodeId> v(g.node_count());
  std::iota(v.begin(), v.end(), NodeId{0});
  return v;
}

Graph star3() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}}); }

/// Best Q over every two-block division of the whole graph.
double best_bipartition_q(const Graph& g) {
  const std::size_t n = g.node_count();
  double best = 0.0;
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<Label> labels(n);
    for (std::size_t v = 0; v < n; ++v) labels[v] = (mask >> v) & 1u;
    best = std::max(best, oracle::literal_modularity(g, labels));
  }
  return best;
}

TEST(ArrivalProbabilities, SingleEdge) {
  const Graph g(2, {{0, 1}});
  const auto members = all_nodes(g);
  const auto a = arrival_probabilities(g, members, 1, 1);
  EXPECT_DOUBLE_EQ(a.prob[0], 1.0);
  EXPECT_DOUBLE_EQ(a.prob[1], 1.0);
}

TEST(ArrivalProbabilities, StarCenter) {
  const Graph g = star3();
  const auto members = all_nodes(g);
  EXPECT_NEAR(arrival_probabilities(g, members, 1, 1).prob[0], 1.0 / 3, 1e-15);
  EXPECT_NEAR(arrival_probabilities(g, members, 1, 2).prob[0], 1.0 / 3, 1e-15);
  // Leaf 2 needs two moves: to the centre, then to leaf 1.
  EXPECT_EQ(arrival_probabilities(g, members, 1, 1).prob[2], 0.0);
  EXPECT_NEAR(arrival_probabilities(g, members, 1, 2).prob[2], 1.0 / 3, 1e-15);
}

TEST(ArrivalProbabilities, Preconditions) {
  const Graph g = star3();
  const std::vector<NodeId> some{0, 1};
  EXPECT_THROW(arrival_probabilities(g, some, 2, 1), std::invalid_argument);
  EXPECT_THROW(arrival_probabilities(g, some, 1, 0), std::invalid_argument);
}

TEST(ArrivalProbabilities, ConfinedToMembers) {
  // Leaf 3 is outside; the centre then has in-subgraph degree 2.
  const Graph g = star3();
  const std::vector<NodeId> members{0, 1, 2};
  const auto a = arrival_probabilities(g, members, 1, 1);
  EXPECT_DOUBLE_EQ(a.prob[0], 0.5);
  EXPECT_EQ(a.prob[3], 0.0);
  // A member cut off from the rest of the subset stays at zero.
  const std::vector<NodeId> isolated{1, 2};
  EXPECT_EQ(arrival_probabilities(g, isolated, 1, 3).prob[2], 0.0);
}

TEST(ArrivalProbabilities, BoundsMonotonicityAndReachability) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5 + rng() % 46;
    const Graph g = oracle::random_graph(n, 3.0 / static_cast<double>(n), rng);
    std::vector<NodeId> members;
    for (NodeId v = 0; v < n; ++v)
      if (rng() % 5) members.push_back(v);
    if (members.empty()) members.push_back(0);
    const NodeId t = members[rng() % members.size()];
    const auto dist = oracle::bfs_distances(g, members, t);
    std::vector<double> previous(n, 0.0);
    for (unsigned l = 1; l <= 6; ++l) {
      const auto a = arrival_probabilities(g, members, t, l);
      ASSERT_EQ(a.prob[t], 1.0);
      for (NodeId v : members) {
        ASSERT_GE(a.prob[v], 0.0);
        ASSERT_LE(a.prob[v], 1.0);
        ASSERT_GE(a.prob[v], previous[v]);
        ASSERT_EQ(a.prob[v] > 0.0, dist[v] <= l) << "node " << v << " l=" << l;
      }
      previous = a.prob;
    }
  }
}

TEST(RankByArrival, TiesByNodeId) {
  const Graph g = star3();
  const auto members = all_nodes(g);
  const auto ranking = rank_by_arrival(arrival_probabilities(g, members, 1, 1), members);
  EXPECT_EQ(ranking, (std::vector<NodeId>{1, 0, 2, 3}));
}

TEST(BestCutoff, TwoTrianglesSplit) {
  const Graph g = oracle::two_triangles();
  const auto members = all_nodes(g);
  const Partition whole(std::vector<Label>(6, 0));
  const double optimum = best_bipartition_q(g);
  EXPECT_NEAR(optimum, 5.0 / 14.0, 1e-12);
  for (NodeId t = 0; t < 3; ++t) {
    const auto ranking = rank_by_arrival(arrival_probabilities(g, members, t, 3), members);
    const auto cut = best_cutoff(g, ranking, whole);
    ASSERT_TRUE(cut);
    EXPECT_NEAR(cut->new_q, optimum, 1e-12);
    auto top = cut->top;
    std::sort(top.begin(), top.end());
    EXPECT_EQ(top, (std::vector<NodeId>{0, 1, 2}));
  }
}

TEST(BestCutoff, CliqueInsideOptimalContextHasNoCut) {
  const Graph g = oracle::two_triangles();
  const Partition context({0, 0, 0, 1, 1, 1});
  const std::vector<NodeId> clique{0, 1, 2};
  const auto ranking = rank_by_arrival(arrival_probabilities(g, clique, 0, 3), clique);
  // Confirm by hand that every prefix split lowers Q.
  for (std::size_t k = 1; k < ranking.size(); ++k) {
    std::vector<Label> labels{0, 0, 0, 1, 1, 1};
    for (std::size_t i = 0; i < k; ++i) labels[ranking[i]] = 2;
    EXPECT_LT(oracle::literal_modularity(g, labels), modularity(g, context));
  }
  EXPECT_FALSE(best_cutoff(g, ranking, context));
}

TEST(BestCutoff, SingleEdgeHasNoCut) {
  const Graph g(2, {{0, 1}});
  EXPECT_NEAR(modularity(g, Partition({0, 1})), -0.5, 1e-15);
  const std::vector<NodeId> ranking{0, 1};
  EXPECT_FALSE(best_cutoff(g, ranking, Partition({0, 0})));
  const std::vector<NodeId> one{0};
  EXPECT_FALSE(best_cutoff(g, one, Partition({0, 1})));
}

TEST(BestCutoff, RankingMustBeOneCommunity) {
  const Graph g = oracle::two_triangles();
  const std::vector<NodeId> mixed{0, 1, 3};
  EXPECT_THROW(best_cutoff(g, mixed, Partition({0, 0, 0, 1, 1, 1})), std::invalid_argument);
}

TEST(IgmrwGenerate, TwoTrianglesForAnySeed) {
  const Graph g = oracle::two_triangles();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const Partition p = igmrw_generate(g, 3, rng);
    EXPECT_EQ(canonicalize(p), Partition({0, 0, 0, 1, 1, 1}));
    EXPECT_NEAR(p.q(), 5.0 / 14.0, 1e-12);
  }
}

TEST(IgmrwGenerate, SingleEdgeStaysWhole) {
  const Graph g(2, {{0, 1}});
  Rng rng(1);
  EXPECT_EQ(igmrw_generate(g, 3, rng).community_count(), 1u);
}

TEST(IgmrwGenerate, DisconnectedPiecesSeparate) {
  const Graph g(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    EXPECT_EQ(canonicalize(igmrw_generate(g, 3, rng)), Partition({0, 0, 0, 1, 1, 1}));
  }
}

TEST(IgmrwGenerate, TraceStrictlyIncreasesAndMatchesResult) {
  std::mt19937_64 graphs(8);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = oracle::random_graph(40, 0.1, graphs);
    Rng rng(seed);
    std::vector<double> accepted;
    const Partition p = igmrw_generate(g, 3, rng, &accepted);
    ASSERT_FALSE(accepted.empty());
    EXPECT_EQ(accepted.front(), 0.0);
    for (std::size_t i = 1; i < accepted.size(); ++i) EXPECT_GT(accepted[i], accepted[i - 1]);
    EXPECT_LE(accepted.size() - 1, g.node_count() - 1);
    EXPECT_NEAR(accepted.back(), p.q(), 1e-12);
    EXPECT_NEAR(p.q(), oracle::literal_modularity(g, std::vector<Label>(p.labels().begin(), p.labels().end())),
                1e-12);
    EXPECT_EQ(p.size(), g.node_count());
  }
}

TEST(IgmrwGenerate, KarateQuality) {
  const Graph g = load_edge_list_file(data_path("karate.edges"));
  int good = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed);
    good += igmrw_generate(g, 3, rng).q() >= 0.35;
  }
  EXPECT_GE(good, 90);
}

TEST(InitPopulation, Sizes) {
  const Graph karate = load_edge_list_file(data_path("karate.edges"));
  const auto pop = init_population(karate, 10, 3, 42);
  ASSERT_EQ(pop.size(), 10u);
  for (const auto& p : pop) EXPECT_GT(p.q(), 0.0);

  const auto pair = init_population(oracle::two_triangles(), 2, 3, 42);
  ASSERT_EQ(pair.size(), 2u);
  EXPECT_EQ(canonicalize(pair[0]), canonicalize(pair[1]));

  EXPECT_THROW(init_population(karate, 1, 3, 42), std::invalid_argument);
}

TEST(InitPopulation, IndependentOfThreadCount) {
  const Graph karate = load_edge_list_file(data_path("karate.edges"));
  const auto one = init_population(karate, 16, 3, 9, 1);
  const auto four = init_population(karate, 16, 3, 9, 4);
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i], four[i]);
    EXPECT_EQ(one[i].q(), four[i].q());
  }
}

}  // namespace
}  // namespace gael
