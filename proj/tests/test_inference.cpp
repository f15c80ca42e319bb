#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "gcf/inference.hpp"
#include "support.hpp"

using namespace gcf;

namespace {

SignalMatrix random_signals(std::mt19937& rng, std::size_t m, std::size_t n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  SignalMatrix s(m, n);
  for (double& x : s.values) x = normal(rng);
  return s;
}

std::vector<std::vector<double>> rows_of(const SignalMatrix& s) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < s.m; ++i) rows.emplace_back(s.row(i).begin(), s.row(i).end());
  return rows;
}

}  // namespace

TEST(Covariance, IdenticalRowsGiveZero) {
  SignalMatrix s(2, 3);
  s.values = {1, 2, 3, 1, 2, 3};
  auto c = covariance_matrix(s);
  for (double x : c.values) EXPECT_EQ(x, 0.0);
}

TEST(Covariance, EqualColumnsCovaryLikeVariance) {
  SignalMatrix s(4, 3);
  s.values = {1, 1, 5, 2, 2, 3, 7, 7, 1, 4, 4, 0};
  auto c = covariance_matrix(s);
  EXPECT_DOUBLE_EQ(c(0, 1), c(0, 0));
}

TEST(Covariance, MatchesDirectSummation) {
  SignalMatrix s(3, 4);
  s.values = {1.0, -2.0, 0.5, 3.0, 0.0, 1.0, 2.5, -1.0, 4.0, 0.0, -0.5, 2.0};
  auto c = covariance_matrix(s);
  auto expected = oracle::oracle_covariance(rows_of(s));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) EXPECT_NEAR(c(a, b), expected[a][b], 1e-12);
  EXPECT_NEAR(c(0, 0), 4.33333333333333333, 1e-12);  // mean 5/3, squares sum 26/3, divisor 2
}

TEST(Covariance, Errors) {
  SignalMatrix one(1, 3);
  EXPECT_THROW(covariance_matrix(one), InputError);
  SignalMatrix bad(2, 2);
  bad.values = {1, std::nan(""), 2, 3};
  EXPECT_THROW(covariance_matrix(bad), InputError);
}

TEST(Knn, DominantPairs) {
  // Columns 0,1 move together, 2,3 move together, the pairs move against each other.
  SignalMatrix s(4, 4);
  s.values = {1, 1, -1, -1, 2, 2, -2, -2, -1, -1, 1.5, 1.5, 0, 0, 0.5, 0.5};
  Graph g = knn_covariance_graph(s, 1);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {2, 3}}));
}

TEST(Knn, MatchesSortOracle) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = random_signals(rng, 50, 8);
    for (std::size_t k = 1; k < 8; ++k) {
      Graph g = knn_covariance_graph(s, k);
      auto expected = oracle::oracle_knn_edges(oracle::oracle_covariance(rows_of(s)), static_cast<int>(k));
      EXPECT_EQ(g.edges(), std::vector<Edge>(expected.begin(), expected.end()));
    }
  }
}

TEST(Knn, OwnChoicesAreIncidentEdges) {
  std::mt19937 rng(9);
  auto s = random_signals(rng, 30, 20);
  auto c = covariance_matrix(s);
  Graph g = knn_graph(c, 4);
  for (std::size_t v = 0; v < 20; ++v) {
    for (Vertex u : top_k(c, v, 4)) EXPECT_TRUE(g.has_edge(static_cast<Vertex>(v), u));
    EXPECT_GE(g.degree(static_cast<Vertex>(v)), 4u);
  }
}

TEST(Knn, InvariantUnderRowPermutationAndScaling) {
  std::mt19937 rng(10);
  auto s = random_signals(rng, 40, 12);
  Graph g = knn_covariance_graph(s, 3);
  SignalMatrix permuted(s.m, s.n), scaled = s;
  std::vector<std::size_t> order(s.m);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < s.m; ++i) std::copy(s.row(order[i]).begin(), s.row(order[i]).end(), permuted.row(i).begin());
  for (double& x : scaled.values) x *= 7.5;
  EXPECT_EQ(knn_covariance_graph(permuted, 3), g);
  EXPECT_EQ(knn_covariance_graph(scaled, 3), g);
}

TEST(Knn, TiesGoToSmallerIds) {
  // All off-diagonal covariances equal: every vertex picks the smallest other id.
  SymmetricMatrix c{4, std::vector<double>(16, 1.0)};
  Graph g = knn_graph(c, 1);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}}));
  EXPECT_EQ(top_k(c, 0, 2), (std::vector<Vertex>{1, 2}));
}

TEST(Knn, ArgumentChecks) {
  SignalMatrix s(3, 4);
  s.values = {1, 2, 3, 4, 2, 1, 0, 3, 5, 5, 1, 0};
  EXPECT_THROW(knn_covariance_graph(s, 0), InputError);
  EXPECT_THROW(knn_covariance_graph(s, 4), InputError);
  EXPECT_NO_THROW(knn_covariance_graph(s, 3));
}

TEST(Knn, CorrelationOption) {
  // Column 2 has a huge variance; covariance prefers it, correlation does not.
  SignalMatrix s(4, 3);
  s.values = {1, 1.1, 100, 2, 2.1, -50, 3, 2.9, 80, 4, 4.2, -120};
  auto cov = covariance_matrix(s), cor = correlation_matrix(s);
  EXPECT_NEAR(cor(0, 0), 1.0, 1e-12);
  EXPECT_EQ(top_k(cor, 0, 1), (std::vector<Vertex>{1}));
  SignalMatrix flat(3, 2);
  flat.values = {1, 5, 2, 5, 3, 5};
  EXPECT_EQ(correlation_matrix(flat)(0, 1), 0.0);
  (void)cov;
}

TEST(Signals, AverageChannels) {
  SignalMatrix s(1, 6);
  s.values = {1, 2, 3, 3, 4, 5};
  auto avg = average_channels(s, 2);
  EXPECT_EQ(avg.n, 3u);
  EXPECT_EQ(avg.values, (std::vector<double>{2, 3, 4}));
  EXPECT_THROW(average_channels(s, 4), InputError);
}
