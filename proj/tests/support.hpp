#pragma once

#include <random>
#include <utility>
#include <vector>

#include "gcf/graph.hpp"
#include "gcf/partial_map.hpp"
#include "oracle/oracle.hpp"

namespace gcf::test {

inline oracle::Matrix to_matrix(const Graph& g) {
  oracle::Matrix m(static_cast<int>(g.order()));
  for (auto [u, v] : g.edges()) m.set(u, v);
  return m;
}

inline std::vector<oracle::Map> to_maps(const std::vector<PartialMap>& maps) {
  std::vector<oracle::Map> out;
  for (const auto& m : maps) out.emplace_back(m.image().begin(), m.image().end());
  return out;
}

inline Graph from_pairs(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<Edge> e(edges.begin(), edges.end());
  return Graph::from_edges(static_cast<std::size_t>(n), e);
}

/// Connected Erdos-Renyi graph: redraws until connected.
inline Graph random_connected(std::mt19937& rng, int n, int percent) {
  while (true) {
    std::vector<Edge> edges;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (static_cast<int>(rng() % 100) < percent) edges.emplace_back(a, b);
    Graph g = Graph::from_edges(static_cast<std::size_t>(n), edges);
    if (is_connected(g)) return g;
  }
}

}  // namespace gcf::test
