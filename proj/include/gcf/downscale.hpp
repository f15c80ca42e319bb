#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "gcf/graph.hpp"
#include "gcf/proxy.hpp"

namespace gcf {

namespace detail {

// near[w] = hop distance from w to the closest admitted vertex, capped at r + 1.
class Proximity {
 public:
  Proximity(const Graph& g, std::size_t r) : g_(g), r_(static_cast<int>(r)), near_(g.order(), r_ + 1) {}

  int operator[](Vertex v) const { return near_[static_cast<std::size_t>(v)]; }

  void admit(Vertex u) {
    std::vector<std::pair<Vertex, int>> frontier{{u, 0}};
    near_[static_cast<std::size_t>(u)] = 0;
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      auto [x, d] = frontier[head];
      if (d == r_) continue;
      for (Vertex w : g_.neighbors(x)) {
        if (near_[static_cast<std::size_t>(w)] > d + 1) {
          near_[static_cast<std::size_t>(w)] = d + 1;
          frontier.emplace_back(w, d + 1);
        }
      }
    }
  }

 private:
  const Graph& g_;
  int r_;
  std::vector<int> near_;
};

}  // namespace detail

/// V_{down r}: starting from {v0}, vertices are admitted one at a time in
/// (BFS layer from v0, id) order when no admitted vertex is closer than r
/// hops and some admitted vertex is at most r hops away; sweeps repeat until
/// nothing changes. A component without v0 is seeded at its smallest id.
inline VertexSet select_kept(const Graph& g, Vertex v0, std::size_t r) {
  require_vertex(g, v0);
  if (r < 1) throw InputError("stride must be at least 1");
  const std::size_t n = g.order();

  // Scan order: layers from v0, then the other components by smallest id,
  // each by layers from that vertex.
  std::vector<Vertex> order;
  std::vector<Vertex> roots;
  std::vector<char> placed(n, 0);
  auto add_component = [&](Vertex root) {
    roots.push_back(root);
    const std::size_t first = order.size();
    order.push_back(root);
    placed[static_cast<std::size_t>(root)] = 1;
    for (std::size_t head = first; head < order.size(); ++head) {
      for (Vertex w : g.neighbors(order[head])) {
        if (!placed[static_cast<std::size_t>(w)]) {
          placed[static_cast<std::size_t>(w)] = 1;
          order.push_back(w);
        }
      }
    }
    // Stable (layer, id) order within the component.
    auto dist = bfs_distances(g, root);
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(first), order.end(), [&](Vertex a, Vertex b) {
      auto da = dist[static_cast<std::size_t>(a)], db = dist[static_cast<std::size_t>(b)];
      return da != db ? da < db : a < b;
    });
  };
  add_component(v0);
  for (std::size_t v = 0; v < n; ++v)
    if (!placed[v]) add_component(static_cast<Vertex>(v));

  std::vector<char> kept(n, 0);
  detail::Proximity near(g, r);
  const int block = static_cast<int>(r) - 1;
  for (Vertex root : roots) {
    kept[static_cast<std::size_t>(root)] = 1;
    near.admit(root);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (Vertex v : order) {
      if (kept[static_cast<std::size_t>(v)] || near[v] <= block || near[v] > static_cast<int>(r)) continue;
      kept[static_cast<std::size_t>(v)] = 1;
      near.admit(v);
      changed = true;
    }
  }

  VertexSet out;
  for (std::size_t v = 0; v < n; ++v)
    if (kept[v]) out.push_back(static_cast<Vertex>(v));
  return out;
}

/// Stride-r plan: kept vertices (ids of the graph it was computed on) and
/// the induced translations between them.
struct DownscalePlan {
  std::size_t r = 1;
  Vertex seed = kBottom;
  int level = 1;
  std::size_t n_parent = 0;
  VertexSet kept;
  std::vector<std::vector<Vertex>> induced;  // induced[p][i]: image of kept[i], or kBottom
  VertexSet origin;                          // original-graph id of kept[i]
  VertexSet uncovered;                       // kept vertices the family never reached

  std::size_t kappa() const { return induced.size(); }

  /// Position of a parent vertex in `kept`, or kBottom.
  Vertex position(Vertex v) const {
    auto it = std::lower_bound(kept.begin(), kept.end(), v);
    return it != kept.end() && *it == v ? static_cast<Vertex>(it - kept.begin()) : kBottom;
  }

  friend bool operator==(const DownscalePlan&, const DownscalePlan&) = default;
};

/// Induced translations: kept v goes to psi_p applied r times, when that
/// lands on a kept vertex.
inline std::vector<std::vector<Vertex>> induce_translations(const ProxyFamily& f, const VertexSet& kept,
                                                            std::size_t r) {
  std::vector<char> is_kept(f.order(), 0);
  for (Vertex v : kept) {
    if (v < 0 || static_cast<std::size_t>(v) >= f.order()) {
      throw InputError("kept vertex " + std::to_string(v) + " is not a vertex of the family");
    }
    is_kept[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<std::vector<Vertex>> induced(f.kappa, std::vector<Vertex>(kept.size(), kBottom));
  for (std::size_t p = 0; p < f.kappa; ++p) {
    for (std::size_t i = 0; i < kept.size(); ++i) {
      Vertex t = kept[i];
      for (std::size_t step = 0; step < r && t != kBottom; ++step) t = f.psi[p][static_cast<std::size_t>(t)];
      if (t != kBottom && is_kept[static_cast<std::size_t>(t)]) induced[p][i] = t;
    }
  }
  return induced;
}

/// select_kept + induce_translations. `parent_origin` maps ids of `g` to
/// original-graph ids when `g` is itself a downscaled level.
inline DownscalePlan downscale(const Graph& g, const ProxyFamily& f, std::size_t r, Vertex seed,
                               const VertexSet* parent_origin = nullptr, int level = 1) {
  if (f.order() != g.order()) {
    throw InputError("family covers " + std::to_string(f.order()) + " vertices, graph has " +
                     std::to_string(g.order()));
  }
  DownscalePlan plan;
  plan.r = r;
  plan.seed = seed;
  plan.level = level;
  plan.n_parent = g.order();
  plan.kept = select_kept(g, seed, r);
  plan.induced = induce_translations(f, plan.kept, r);
  for (Vertex v : plan.kept) {
    plan.origin.push_back(parent_origin ? (*parent_origin)[static_cast<std::size_t>(v)] : v);
    if (!f.reached(v)) plan.uncovered.push_back(v);
  }
  return plan;
}

inline DownscalePlan downscale(const Graph& g, const ProxyFamily& f, std::size_t r) {
  return downscale(g, f, r, f.v0);
}

/// Inputs for the next scale: everything relabeled to positions in `kept`.
struct Level {
  Graph graph;          // edges between kept vertices linked by an induced translation
  ProxyFamily family;   // induced translations as a family
  VertexSet origin;     // original-graph id per position
  int level = 1;
};

inline Level chain(const DownscalePlan& plan) {
  Level out;
  out.level = plan.level;
  out.origin = plan.origin;
  const std::size_t m = plan.kept.size();
  ProxyFamily& f = out.family;
  f.kappa = plan.kappa();
  f.v0 = plan.position(plan.seed);
  f.psi.assign(f.kappa, std::vector<Vertex>(m, kBottom));
  f.cost.assign(m, kUnreached);
  std::vector<Edge> edges;
  for (std::size_t p = 0; p < f.kappa; ++p) {
    for (std::size_t i = 0; i < m; ++i) {
      const Vertex t = plan.induced[p][i];
      if (t == kBottom) continue;
      const Vertex j = plan.position(t);
      f.psi[p][i] = j;
      if (p == 0) f.cost[i] = 0;
      if (j != static_cast<Vertex>(i)) {
        edges.emplace_back(std::min(static_cast<Vertex>(i), j), std::max(static_cast<Vertex>(i), j));
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  out.graph = Graph::from_edges(m, edges);
  return out;
}

/// Next plan in a chain, computed on the level graph of `plan`.
inline DownscalePlan downscale_next(const DownscalePlan& plan, std::size_t r) {
  Level lv = chain(plan);
  return downscale(lv.graph, lv.family, r, lv.family.v0, &lv.origin, plan.level + 1);
}

/// Pairs of kept vertices closer than r hops.
inline std::vector<Edge> separation_violations(const Graph& g, const VertexSet& kept, std::size_t r) {
  std::vector<char> is_kept(g.order(), 0);
  for (Vertex v : kept) is_kept[static_cast<std::size_t>(v)] = 1;
  std::vector<Edge> bad;
  for (Vertex v : kept) {
    auto d = bfs_distances(g, v, static_cast<int>(r) - 1);
    for (std::size_t u = 0; u < g.order(); ++u) {
      if (is_kept[u] && static_cast<Vertex>(u) > v && d[u] >= 0) bad.emplace_back(v, static_cast<Vertex>(u));
    }
  }
  return bad;
}

/// Kept vertices other than the component roots with no kept vertex within r hops.
inline VertexSet coverage_violations(const Graph& g, const VertexSet& kept, std::size_t r, Vertex seed) {
  std::vector<char> is_kept(g.order(), 0);
  for (Vertex v : kept) is_kept[static_cast<std::size_t>(v)] = 1;
  std::vector<char> root(g.order(), 0);
  root[static_cast<std::size_t>(seed)] = 1;
  for (const auto& comp : connected_components(g)) {
    if (!std::binary_search(comp.begin(), comp.end(), seed)) root[static_cast<std::size_t>(comp.front())] = 1;
  }
  VertexSet bad;
  for (Vertex v : kept) {
    if (root[static_cast<std::size_t>(v)]) continue;
    auto d = bfs_distances(g, v, static_cast<int>(r));
    bool covered = false;
    for (std::size_t u = 0; u < g.order() && !covered; ++u) {
      covered = is_kept[u] && static_cast<Vertex>(u) != v && d[u] >= 0;
    }
    if (!covered) bad.push_back(v);
  }
  return bad;
}

}  // namespace gcf
