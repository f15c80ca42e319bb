#include <gtest/gtest.h>

#include "oracle/oracle.hpp"

using namespace gcf::oracle;

TEST(Oracle, ConnectedGraphCountsUpToIsomorphism) {
  const std::size_t expected[] = {0, 1, 1, 2, 6, 21, 112};
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(connected_graphs(n).size(), expected[n]) << "n = " << n;
}

TEST(Oracle, TranslationsOfSmallGraphs) {
  // K2: identity and the swap; the half maps 0->1 and 1->0 are aligned with it.
  auto k2 = oracle_translations(from_edges(2, {{0, 1}}));
  EXPECT_EQ(k2, (std::vector<Map>{{0, 1}, {1, 0}}));

  // K3: identity and the two 3-cycles.
  auto k3 = oracle_translations(from_edges(3, {{0, 1}, {1, 2}, {0, 2}}));
  EXPECT_EQ(k3, (std::vector<Map>{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}));

  // P3: identity, the two shifts and the two end swaps, all of loss 1.
  auto p3 = oracle_translations(from_edges(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(p3, (std::vector<Map>{{0, 1, 2}, {-1, 0, 1}, {-1, 2, 1}, {1, 0, -1}, {1, 2, -1}}));
}

TEST(Oracle, CandidateChecks) {
  Matrix p3 = from_edges(3, {{0, 1}, {1, 2}});
  EXPECT_TRUE(is_candidate(p3, {1, 2, -1}));
  EXPECT_FALSE(is_candidate(p3, {1, -1, 1}));   // not injective
  EXPECT_FALSE(is_candidate(p3, {2, -1, -1}));  // not an edge
  EXPECT_FALSE(is_candidate(p3, {1, -1, 1}));
}

TEST(Oracle, StencilBasics) {
  std::vector<double> img(12);
  for (int k = 0; k < 12; ++k) img[k] = k + 1;
  Stencil zero;
  zero.bias = 3;
  for (double y : oracle_2d_stencil(3, 4, img, zero)) EXPECT_EQ(y, 3);
  Stencil center;
  center.center = 1;
  EXPECT_EQ(oracle_2d_stencil(3, 4, img, center), img);
  Stencil right;
  right.right = 1;
  auto y = oracle_2d_stencil(3, 4, img, right);
  EXPECT_EQ(y[0], 2);
  EXPECT_EQ(y[3], 0);  // zero padding past the right edge
}

TEST(Oracle, MinLossPaths) {
  // 0 -(1)-> 1 -(1)-> 2 and a direct 0 -(5)-> 2.
  std::vector<std::vector<std::pair<int, int>>> moves{{{1, 1}, {2, 5}}, {{2, 1}}, {}, {}};
  EXPECT_EQ(oracle_min_loss_paths(4, moves, 0), (std::vector<long>{0, 1, 2, -1}));
}

TEST(Oracle, KnnTiesGoToSmallerIds) {
  std::vector<std::vector<double>> cov{{1, 0.5, 0.5}, {0.5, 1, 0.2}, {0.5, 0.2, 1}};
  EXPECT_EQ(oracle_knn_edges(cov, 1), (std::vector<std::pair<int, int>>{{0, 1}, {0, 2}}));
}
