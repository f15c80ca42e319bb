#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <vector>

#include "gcf/graph.hpp"

namespace gcf {

/// Partial vertex map over the vertices of one context graph. Entry v holds
/// the image of v, or kBottom when v is outside the domain.
class PartialMap {
 public:
  PartialMap() = default;
  explicit PartialMap(std::size_t n) : image_(n, kBottom) {}
  explicit PartialMap(std::vector<Vertex> image) : image_(std::move(image)) {}

  static PartialMap identity(std::size_t n) {
    PartialMap m(n);
    for (std::size_t v = 0; v < n; ++v) m.image_[v] = static_cast<Vertex>(v);
    return m;
  }

  std::size_t size() const { return image_.size(); }
  Vertex operator[](Vertex v) const { return image_[static_cast<std::size_t>(v)]; }
  void set(Vertex v, Vertex target) { image_[static_cast<std::size_t>(v)] = target; }
  bool defined(Vertex v) const { return image_[static_cast<std::size_t>(v)] != kBottom; }
  const std::vector<Vertex>& image() const { return image_; }

  VertexSet domain() const {
    VertexSet u;
    for (std::size_t v = 0; v < image_.size(); ++v) {
      if (image_[v] != kBottom) u.push_back(static_cast<Vertex>(v));
    }
    return u;
  }

  std::size_t domain_size() const {
    return static_cast<std::size_t>(
        std::count_if(image_.begin(), image_.end(), [](Vertex t) { return t != kBottom; }));
  }

  /// |V - U| in the context graph. The identity is total, so its loss is 0.
  std::size_t loss() const { return image_.size() - domain_size(); }

  bool is_identity() const {
    for (std::size_t v = 0; v < image_.size(); ++v) {
      if (image_[v] != static_cast<Vertex>(v)) return false;
    }
    return true;
  }

  /// Two maps are aligned when they send some common vertex to the same image.
  bool aligned_with(const PartialMap& other) const {
    const std::size_t n = std::min(image_.size(), other.image_.size());
    for (std::size_t v = 0; v < n; ++v) {
      if (image_[v] != kBottom && image_[v] == other.image_[v]) return true;
    }
    return false;
  }

  /// Image -> preimage. Only meaningful for injective maps.
  PartialMap inverse() const {
    PartialMap inv(image_.size());
    for (std::size_t v = 0; v < image_.size(); ++v) {
      if (image_[v] != kBottom) inv.image_[static_cast<std::size_t>(image_[v])] = static_cast<Vertex>(v);
    }
    return inv;
  }

  friend bool operator==(const PartialMap&, const PartialMap&) = default;

  /// Canonical order: by loss, then lexicographically by image (kBottom first).
  friend std::strong_ordering operator<=>(const PartialMap& a, const PartialMap& b) {
    if (auto c = a.loss() <=> b.loss(); c != 0) return c;
    return a.image_ <=> b.image_;
  }

 private:
  std::vector<Vertex> image_;
};

inline bool is_injective(const PartialMap& m) {
  std::vector<bool> hit(m.size(), false);
  for (Vertex t : m.image()) {
    if (t == kBottom) continue;
    if (t < 0 || static_cast<std::size_t>(t) >= m.size() || hit[static_cast<std::size_t>(t)]) return false;
    hit[static_cast<std::size_t>(t)] = true;
  }
  return true;
}

/// Injective, edge-constrained (identity exempt) and strongly
/// neighborhood-preserving on `g`.
inline bool is_candidate_translation(const Graph& g, const PartialMap& m) {
  if (m.size() != g.order()) {
    throw InputError("partial map length " + std::to_string(m.size()) + " does not match graph order " +
                     std::to_string(g.order()));
  }
  if (!is_injective(m)) return false;
  if (m.is_identity()) return true;
  const VertexSet u = m.domain();
  for (Vertex v : u) {
    if (!g.has_edge(v, m[v])) return false;
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      if (g.has_edge(u[i], u[j]) != g.has_edge(m[u[i]], m[u[j]])) return false;
    }
  }
  return true;
}

/// Keeps the candidates that are translations: no aligned translation of
/// strictly smaller loss. The rule is applied in order of increasing loss,
/// so only candidates already accepted can eliminate later ones. Output is in
/// canonical order.
inline std::vector<PartialMap> keep_minimal_aligned(std::vector<PartialMap> candidates) {
  std::sort(candidates.begin(), candidates.end());
  if (candidates.empty()) return candidates;
  const std::size_t n = candidates.front().size();
  // blocked[v * n + t]: an accepted translation of smaller loss sends v to t.
  std::vector<char> blocked(n * n, 0);
  std::vector<PartialMap> kept;
  std::size_t level_loss = candidates.front().loss();
  std::size_t level_start = 0;  // first kept map of the current loss level
  for (const PartialMap& m : candidates) {
    if (m.loss() != level_loss) {
      // A new loss level: translations of the previous levels now block.
      for (std::size_t k = level_start; k < kept.size(); ++k) {
        for (std::size_t v = 0; v < n; ++v) {
          Vertex t = kept[k][static_cast<Vertex>(v)];
          if (t != kBottom) blocked[v * n + static_cast<std::size_t>(t)] = 1;
        }
      }
      level_start = kept.size();
      level_loss = m.loss();
    }
    bool aligned = false;
    for (std::size_t v = 0; v < n && !aligned; ++v) {
      Vertex t = m[static_cast<Vertex>(v)];
      aligned = t != kBottom && blocked[v * n + static_cast<std::size_t>(t)];
    }
    if (!aligned) kept.push_back(m);
  }
  return kept;
}

}  // namespace gcf
