#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gcf/error.hpp"

namespace gcf {

/// Dense 0-based vertex id. Negative values never name a vertex.
using Vertex = std::int32_t;

/// Sentinel for "no image": an undefined entry of a partial map or kernel slot.
inline constexpr Vertex kBottom = -1;

/// Ascending, duplicate-free list of vertex ids of one graph.
using VertexSet = std::vector<Vertex>;

using Edge = std::pair<Vertex, Vertex>;

/// Undirected simple graph over vertices 0..n-1. Immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Edges may be given in either
  /// orientation; self-loops, duplicates and out-of-range ids are rejected.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges) {
    Graph g;
    g.adj_.resize(n);
    for (const auto& [a, b] : edges) {
      if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n) {
        throw InputError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                         ") references a vertex outside 0.." + std::to_string(n) + "-1");
      }
      if (a == b) throw InputError("self-loop on vertex " + std::to_string(a));
      g.adj_[a].push_back(b);
      g.adj_[b].push_back(a);
    }
    for (std::size_t v = 0; v < n; ++v) {
      auto& nb = g.adj_[v];
      std::sort(nb.begin(), nb.end());
      if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) {
        throw InputError("duplicate edge at vertex " + std::to_string(v));
      }
      g.max_degree_ = std::max(g.max_degree_, nb.size());
      g.edge_count_ += nb.size();
    }
    g.edge_count_ /= 2;
    return g;
  }

  static Graph from_edges(std::size_t n, const std::vector<Edge>& edges) {
    return from_edges(n, std::span<const Edge>(edges));
  }

  std::size_t order() const { return adj_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t max_degree() const { return max_degree_; }
  std::size_t degree(Vertex v) const { return adj_[static_cast<std::size_t>(v)].size(); }

  bool contains(Vertex v) const { return v >= 0 && static_cast<std::size_t>(v) < adj_.size(); }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }

  bool has_edge(Vertex u, Vertex v) const {
    const auto& nb = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  /// All edges as (u, v) with u < v, sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      for (Vertex v : adj_[u]) {
        if (static_cast<Vertex>(u) < v) out.emplace_back(static_cast<Vertex>(u), v);
      }
    }
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::size_t max_degree_ = 0;
  std::size_t edge_count_ = 0;
};

inline void require_vertex(const Graph& g, Vertex v) {
  if (!g.contains(v)) {
    throw InputError("vertex " + std::to_string(v) + " out of range for graph of order " +
                     std::to_string(g.order()));
  }
}

/// Hop distances from `source`, truncated at `max_depth`; unreached entries are -1.
inline std::vector<int> bfs_distances(const Graph& g, Vertex source, int max_depth = -1) {
  require_vertex(g, source);
  std::vector<int> dist(g.order(), -1);
  std::deque<Vertex> queue{source};
  dist[static_cast<std::size_t>(source)] = 0;
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    int du = dist[static_cast<std::size_t>(u)];
    if (max_depth >= 0 && du == max_depth) continue;
    for (Vertex w : g.neighbors(u)) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = du + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

/// N_r(v): vertices at hop distance <= r from v, including v.
inline VertexSet neighborhood(const Graph& g, Vertex v, int r) {
  require_vertex(g, v);
  if (r < 0) throw InputError("hop radius must be non-negative");
  // Local BFS so that the cost is proportional to the ball, not to n.
  VertexSet ball{v};
  std::vector<std::pair<Vertex, int>> frontier{{v, 0}};
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    auto [u, du] = frontier[head];
    if (du == r) continue;
    for (Vertex w : g.neighbors(u)) {
      if (std::find(ball.begin(), ball.end(), w) == ball.end()) {
        ball.push_back(w);
        frontier.emplace_back(w, du + 1);
      }
    }
  }
  std::sort(ball.begin(), ball.end());
  return ball;
}

/// Subgraph induced by a vertex set; local id i corresponds to original id
/// `to_original[i]`, which is ascending.
struct InducedSubgraph {
  Graph graph;
  VertexSet to_original;

  /// Local id of an original vertex, or kBottom when it is not in the subgraph.
  Vertex local_id(Vertex original) const {
    auto it = std::lower_bound(to_original.begin(), to_original.end(), original);
    if (it == to_original.end() || *it != original) return kBottom;
    return static_cast<Vertex>(it - to_original.begin());
  }
};

inline InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> s) {
  if (s.empty()) throw InputError("induced subgraph of an empty vertex set");
  InducedSubgraph sub;
  sub.to_original.assign(s.begin(), s.end());
  std::sort(sub.to_original.begin(), sub.to_original.end());
  if (std::adjacent_find(sub.to_original.begin(), sub.to_original.end()) != sub.to_original.end()) {
    throw InputError("induced subgraph vertex set contains duplicates");
  }
  for (Vertex v : sub.to_original) require_vertex(g, v);

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < sub.to_original.size(); ++i) {
    for (Vertex w : g.neighbors(sub.to_original[i])) {
      Vertex j = sub.local_id(w);
      if (j != kBottom && static_cast<Vertex>(i) < j) edges.emplace_back(static_cast<Vertex>(i), j);
    }
  }
  sub.graph = Graph::from_edges(sub.to_original.size(), edges);
  return sub;
}

/// Connected components, each ascending, ordered by smallest member.
inline std::vector<VertexSet> connected_components(const Graph& g) {
  std::vector<VertexSet> components;
  std::vector<bool> seen(g.order(), false);
  for (std::size_t start = 0; start < g.order(); ++start) {
    if (seen[start]) continue;
    VertexSet comp{static_cast<Vertex>(start)};
    seen[start] = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (Vertex w : g.neighbors(comp[head])) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

inline bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

/// Human-readable component listing used by the pipeline's connectivity gate.
inline std::string describe_components(const std::vector<VertexSet>& components) {
  std::string out = std::to_string(components.size()) + " connected components:";
  for (const auto& c : components) {
    out += "\n  size " + std::to_string(c.size()) + ": {";
    for (std::size_t i = 0; i < c.size() && i < 16; ++i) {
      if (i) out += ",";
      out += std::to_string(c[i]);
    }
    if (c.size() > 16) out += ",...";
    out += "}";
  }
  return out;
}

/// Throws ValidationError listing the components when `g` is disconnected.
inline void require_connected(const Graph& g) {
  auto components = connected_components(g);
  if (components.size() > 1) {
    throw ValidationError("graph is disconnected; run per component. " +
                          describe_components(components));
  }
}

/// 4-connected H x W grid; vertex (row, col) has id row * W + col.
inline Graph grid_graph(std::size_t height, std::size_t width) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < height; ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      auto v = static_cast<Vertex>(i * width + j);
      if (j + 1 < width) edges.emplace_back(v, v + 1);
      if (i + 1 < height) edges.emplace_back(v, static_cast<Vertex>(v + width));
    }
  }
  return Graph::from_edges(height * width, edges);
}

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
  return Graph::from_edges(n, edges);
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
  }
  return Graph::from_edges(n, edges);
}

}  // namespace gcf
