#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "gcf/graph.hpp"
#include "gcf/partial_map.hpp"
#include "gcf/translations.hpp"

namespace gcf {

using Cost = std::int64_t;
inline constexpr Cost kUnreached = -1;

/// Indexing kernel placed on N_1(center). Slot 0 is the center.
struct KernelIndexing {
  Vertex center = kBottom;
  std::vector<Vertex> slots;
  Cost cost = 0;

  friend bool operator==(const KernelIndexing&, const KernelIndexing&) = default;
};

/// Family of proxy-translations: psi[p][c] is the vertex held by slot p of
/// the kernel placed at center c, or kBottom.
struct ProxyFamily {
  std::size_t kappa = 0;
  Vertex v0 = kBottom;
  std::vector<std::vector<Vertex>> psi;
  std::vector<Cost> cost;  // kUnreached for centers the kernel never visited

  std::size_t order() const { return cost.size(); }
  bool reached(Vertex c) const { return cost[static_cast<std::size_t>(c)] != kUnreached; }

  VertexSet unreached() const {
    VertexSet out;
    for (std::size_t c = 0; c < cost.size(); ++c) {
      if (cost[c] == kUnreached) out.push_back(static_cast<Vertex>(c));
    }
    return out;
  }

  Cost total_cost() const {
    Cost total = 0;
    for (Cost c : cost) {
      if (c != kUnreached) total += c;
    }
    return total;
  }

  std::size_t bottom_count() const {
    std::size_t count = 0;
    for (const auto& row : psi) count += static_cast<std::size_t>(std::count(row.begin(), row.end(), kBottom));
    return count;
  }

  friend bool operator==(const ProxyFamily&, const ProxyFamily&) = default;
};

inline KernelIndexing seed_kernel(const Graph& g, Vertex v0) {
  require_vertex(g, v0);
  KernelIndexing k;
  k.center = v0;
  k.slots.push_back(v0);
  for (Vertex w : g.neighbors(v0)) k.slots.push_back(w);
  return k;
}

/// Moves a kernel with the i-th local translation of its center. Slots that
/// leave the translation's domain become kBottom and stay so.
inline KernelIndexing move_kernel(const KernelIndexing& k, const LocalTranslationSet& local, std::size_t i) {
  KernelIndexing moved;
  moved.center = local.image_of(i, k.center);
  moved.cost = k.cost + static_cast<Cost>(local.maps[i].loss());
  moved.slots.reserve(k.slots.size());
  for (Vertex s : k.slots) moved.slots.push_back(s == kBottom ? kBottom : local.image_of(i, s));
  return moved;
}

namespace detail {

struct FrontierItem {
  Cost cost;
  std::size_t bottoms;
  std::size_t reversals;
  std::size_t distortion;
  std::size_t predecessor_rank;  // settle order of the center the move started from
  KernelIndexing kernel;

  // Ascending priority; std::priority_queue needs "less urgent" as greater.
  friend bool operator>(const FrontierItem& a, const FrontierItem& b) {
    if (a.cost != b.cost) return a.cost > b.cost;
    if (a.bottoms != b.bottoms) return a.bottoms > b.bottoms;
    if (a.reversals != b.reversals) return a.reversals > b.reversals;
    if (a.distortion != b.distortion) return a.distortion > b.distortion;
    if (a.predecessor_rank != b.predecessor_rank) return a.predecessor_rank > b.predecessor_rank;
    if (a.kernel.slots != b.kernel.slots) return a.kernel.slots > b.kernel.slots;
    return a.kernel.center > b.kernel.center;
  }
};

inline std::size_t count_bottoms(const std::vector<Vertex>& slots) {
  return static_cast<std::size_t>(std::count(slots.begin(), slots.end(), kBottom));
}

inline std::size_t common_neighbors(const Graph& g, Vertex a, Vertex b) {
  auto na = g.neighbors(a), nb = g.neighbors(b);
  std::size_t count = 0;
  for (auto i = na.begin(), j = nb.begin(); i != na.end() && j != nb.end();) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else { ++count; ++i; ++j; }
  }
  return count;
}

// Pairwise relation between kernel slots: adjacency plus common-neighbor count.
struct KernelShape {
  std::size_t kappa = 0;
  std::vector<std::size_t> relation;

  static std::size_t relate(const Graph& g, Vertex a, Vertex b) {
    return common_neighbors(g, a, b) * 2 + (g.has_edge(a, b) ? 1 : 0);
  }

  KernelShape(const Graph& g, const std::vector<Vertex>& slots) : kappa(slots.size()), relation(kappa * kappa, 0) {
    for (std::size_t p = 0; p < kappa; ++p)
      for (std::size_t q = p + 1; q < kappa; ++q) relation[p * kappa + q] = relate(g, slots[p], slots[q]);
  }

  std::size_t distortion(const Graph& g, const std::vector<Vertex>& slots) const {
    std::size_t count = 0;
    for (std::size_t p = 0; p < kappa; ++p) {
      if (slots[p] == kBottom) continue;
      for (std::size_t q = p + 1; q < kappa; ++q) {
        if (slots[q] != kBottom && relate(g, slots[p], slots[q]) != relation[p * kappa + q]) ++count;
      }
    }
    return count;
  }
};

// Slots that pointed at the new center and now point back at the old one.
inline std::size_t count_reversals(const KernelIndexing& from, const KernelIndexing& to) {
  std::size_t count = 0;
  for (std::size_t p = 0; p < from.slots.size(); ++p) {
    if (from.slots[p] == to.center && to.slots[p] == from.center) ++count;
  }
  return count;
}

}  // namespace detail

struct PropagationResult {
  ProxyFamily family;
  std::vector<KernelIndexing> indexings;  // final indexing per reached center, by center id
  VertexSet unreached;
};

/// Moves the kernel seeded at v0 everywhere the local translations lead,
/// keeping for each center the indexing of minimum accumulated loss.
///
/// The frontier is expanded in nondecreasing cost, so every center is settled
/// exactly once with its optimal cost. Among equal-cost indexings of one
/// center the one with fewer kBottom slots wins, then the one produced from
/// the earlier-settled predecessor, then the lexicographically smallest slot
/// array.
inline PropagationResult propagate(const Graph& g, const std::vector<LocalTranslationSet>& locals, Vertex v0) {
  require_vertex(g, v0);
  if (locals.size() != g.order()) {
    throw InputError("propagate: expected local translations for all " + std::to_string(g.order()) +
                     " vertices, got " + std::to_string(locals.size()));
  }
  const std::size_t n = g.order();
  PropagationResult result;
  KernelIndexing seed = seed_kernel(g, v0);
  const std::size_t kappa = seed.slots.size();

  std::vector<bool> settled(n, false);
  std::vector<std::size_t> rank(n, 0);
  std::size_t settled_count = 0;
  std::priority_queue<detail::FrontierItem, std::vector<detail::FrontierItem>, std::greater<>> frontier;
  const detail::KernelShape shape(g, seed.slots);
  frontier.push({0, detail::count_bottoms(seed.slots), 0, 0, 0, std::move(seed)});

  std::vector<KernelIndexing> best(n);
  while (!frontier.empty()) {
    detail::FrontierItem item = frontier.top();
    frontier.pop();
    const Vertex c = item.kernel.center;
    if (settled[static_cast<std::size_t>(c)]) continue;
    settled[static_cast<std::size_t>(c)] = true;
    rank[static_cast<std::size_t>(c)] = settled_count++;

    const LocalTranslationSet& local = locals[static_cast<std::size_t>(c)];
    if (local.center != c) throw InputError("propagate: local translation set " + std::to_string(c) + " is for another center");
    for (std::size_t i = 0; i < local.maps.size(); ++i) {
      if (local.maps[i].is_identity()) continue;
      const Vertex target = local.image_of(i, c);
      if (settled[static_cast<std::size_t>(target)]) continue;
      KernelIndexing moved = move_kernel(item.kernel, local, i);
      const std::size_t bottoms = detail::count_bottoms(moved.slots);
      const std::size_t reversals = detail::count_reversals(item.kernel, moved);
      const std::size_t distortion = shape.distortion(g, moved.slots);
      frontier.push({moved.cost, bottoms, reversals, distortion, rank[static_cast<std::size_t>(c)], std::move(moved)});
    }
    best[static_cast<std::size_t>(c)] = std::move(item.kernel);
  }

  ProxyFamily& f = result.family;
  f.kappa = kappa;
  f.v0 = v0;
  f.psi.assign(kappa, std::vector<Vertex>(n, kBottom));
  f.cost.assign(n, kUnreached);
  for (std::size_t c = 0; c < n; ++c) {
    if (!settled[c]) {
      result.unreached.push_back(static_cast<Vertex>(c));
      continue;
    }
    f.cost[c] = best[c].cost;
    for (std::size_t p = 0; p < kappa; ++p) f.psi[p][c] = best[c].slots[p];
  }
  result.indexings = std::move(best);
  return result;
}

/// Each kernel index as a partial map over V; index 0 is the identity on
/// reached centers.
inline std::vector<PartialMap> family_as_maps(const ProxyFamily& f) {
  std::vector<PartialMap> maps;
  maps.reserve(f.kappa);
  for (const auto& row : f.psi) maps.emplace_back(row);
  return maps;
}

struct SeedChoice {
  Vertex seed = kBottom;
  std::size_t unreached = 0;
  Cost total_cost = 0;
  std::size_t bottoms = 0;
};

/// Structural score used to compare families from different seeds; smaller
/// is better (fewest unreached centers, then smallest total cost, then
/// fewest undefined entries, then smallest seed id).
inline SeedChoice score_family(const ProxyFamily& f) {
  return {f.v0, f.unreached().size(), f.total_cost(), f.bottom_count()};
}

inline bool better_seed(const SeedChoice& a, const SeedChoice& b) {
  return std::tie(a.unreached, a.total_cost, a.bottoms, a.seed) <
         std::tie(b.unreached, b.total_cost, b.bottoms, b.seed);
}

/// Candidate seeds for automatic selection: `count` vertices drawn from a
/// seeded generator plus the smallest-id vertex of maximum degree, ascending
/// and without duplicates.
inline VertexSet auto_seed_candidates(const Graph& g, std::size_t count, std::uint64_t rng_seed) {
  VertexSet seeds;
  if (g.order() == 0) return seeds;
  std::mt19937_64 rng(rng_seed);
  for (std::size_t i = 0; i < count; ++i) seeds.push_back(static_cast<Vertex>(rng() % g.order()));
  Vertex hub = 0;
  for (std::size_t v = 1; v < g.order(); ++v) {
    if (g.degree(static_cast<Vertex>(v)) > g.degree(hub)) hub = static_cast<Vertex>(v);
  }
  seeds.push_back(hub);
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  return seeds;
}

/// Graph center: the smallest-id vertex of minimum eccentricity within the
/// component of vertex 0. Eccentricity bounds from each BFS prune the search
/// (alternating the most central and the most peripheral candidate); after
/// `max_sweeps` BFS runs the best vertex found so far is returned.
inline Vertex central_seed(const Graph& g, std::size_t max_sweeps = 256) {
  if (g.order() == 0) throw InputError("empty graph has no seed vertex");
  const std::size_t n = g.order();
  constexpr int kInf = std::numeric_limits<int>::max();
  const auto reach = bfs_distances(g, 0);
  std::vector<int> lower(n, 0), upper(n, kInf);
  std::vector<char> exact(n, 0);
  Vertex best = kBottom;
  int radius = kInf;
  auto open = [&](std::size_t v) {
    if (reach[v] < 0 || exact[v]) return false;
    return lower[v] < radius || (lower[v] == radius && static_cast<Vertex>(v) < best);
  };
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    Vertex pick = kBottom;
    for (std::size_t v = 0; v < n; ++v) {
      if (!open(v)) continue;
      if (pick == kBottom) { pick = static_cast<Vertex>(v); continue; }
      auto p = static_cast<std::size_t>(pick);
      if (sweep % 2 == 0 ? lower[v] < lower[p] : upper[v] > upper[p]) pick = static_cast<Vertex>(v);
    }
    if (pick == kBottom) break;
    const auto d = bfs_distances(g, pick);
    const int ecc = *std::max_element(d.begin(), d.end());
    exact[static_cast<std::size_t>(pick)] = 1;
    if (ecc < radius || (ecc == radius && pick < best)) {
      radius = ecc;
      best = pick;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (d[v] < 0) continue;
      lower[v] = std::max({lower[v], d[v], ecc - d[v]});
      upper[v] = std::min(upper[v], ecc + d[v]);
    }
  }
  return best;
}

struct SeedSearchResult {
  PropagationResult best;
  std::vector<SeedChoice> tried;
};

/// Propagates from every seed and keeps the best-scoring family.
inline SeedSearchResult propagate_best_seed(const Graph& g, const std::vector<LocalTranslationSet>& locals,
                                            const VertexSet& seeds) {
  if (seeds.empty()) throw InputError("no candidate seed vertices");
  SeedSearchResult out;
  bool have = false;
  SeedChoice best_score;
  for (Vertex s : seeds) {
    PropagationResult r = propagate(g, locals, s);
    SeedChoice score = score_family(r.family);
    out.tried.push_back(score);
    if (!have || better_seed(score, best_score)) {
      best_score = score;
      out.best = std::move(r);
      have = true;
    }
  }
  return out;
}

}  // namespace gcf
