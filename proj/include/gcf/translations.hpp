#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "gcf/graph.hpp"
#include "gcf/partial_map.hpp"

namespace gcf {

inline constexpr std::size_t kDefaultEnumerationCap = 12;
inline constexpr std::size_t kDefaultContextCap = 64;

namespace detail {

// Backtracking over the vertices of `order`: each one is either left out of
// the domain or sent to a neighbor. Injectivity and the edge constraint hold by
// construction; strong neighborhood preservation is checked pairwise against
// the vertices assigned so far. `required` (or kBottom) must be in the domain.
// Every non-empty candidate is emitted.
class CandidateSearch {
 public:
  CandidateSearch(const Graph& g, std::span<const Vertex> order, Vertex required)
      : g_(g), n_(g.order()), order_(order.begin(), order.end()), required_(required), used_(n_, 0), adj_(n_ * n_, 0) {
    for (const auto& [a, b] : g.edges()) {
      adj_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)] = 1;
      adj_[static_cast<std::size_t>(b) * n_ + static_cast<std::size_t>(a)] = 1;
    }
  }

  std::vector<PartialMap> run() {
    image_.assign(n_, kBottom);
    assigned_.clear();
    out_.clear();
    recurse(0);
    return std::move(out_);
  }

 private:
  void recurse(std::size_t i) {
    if (i == order_.size()) {
      if (!assigned_.empty()) out_.emplace_back(image_);
      return;
    }
    const Vertex v = order_[i];
    for (Vertex t : g_.neighbors(v)) {
      if (used_[static_cast<std::size_t>(t)] || !consistent(v, t)) continue;
      used_[static_cast<std::size_t>(t)] = 1;
      image_[static_cast<std::size_t>(v)] = t;
      assigned_.push_back(v);
      recurse(i + 1);
      assigned_.pop_back();
      image_[static_cast<std::size_t>(v)] = kBottom;
      used_[static_cast<std::size_t>(t)] = 0;
    }
    if (v != required_) recurse(i + 1);
  }

  bool adjacent(Vertex a, Vertex b) const {
    return adj_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)] != 0;
  }

  bool consistent(Vertex v, Vertex t) const {
    for (Vertex a : assigned_) {
      if (adjacent(a, v) != adjacent(image_[static_cast<std::size_t>(a)], t)) return false;
    }
    return true;
  }

  const Graph& g_;
  std::size_t n_;
  std::vector<Vertex> order_;
  Vertex required_;
  std::vector<char> used_;
  std::vector<char> adj_;
  std::vector<Vertex> assigned_;
  std::vector<Vertex> image_;
  std::vector<PartialMap> out_;
};

}  // namespace detail

/// Every translation of a small graph, identity included, in canonical
/// order (loss, then image). Exponential: refuses graphs above `cap` vertices.
inline std::vector<PartialMap> enumerate_translations(const Graph& g,
                                                      std::size_t cap = kDefaultEnumerationCap) {
  if (g.order() > cap) {
    throw ValidationError("enumerate_translations: graph has " + std::to_string(g.order()) +
                          " vertices, above the cap of " + std::to_string(cap) +
                          "; use find_local_translations for large graphs");
  }
  if (g.order() == 0) return {};
  std::vector<Vertex> order(g.order());
  for (std::size_t v = 0; v < order.size(); ++v) order[v] = static_cast<Vertex>(v);
  auto maps = keep_minimal_aligned(detail::CandidateSearch(g, order, kBottom).run());
  maps.push_back(PartialMap::identity(g.order()));
  std::sort(maps.begin(), maps.end());
  return maps;
}

/// Which vertices of the context a local translation may have in its domain.
enum class LocalDomain {
  kContext,  // any vertex of N_2(center)
  kKernel,   // only N_1(center)
};

/// Local translations around one center. Maps live on `context`, the
/// subgraph induced by N_2(center), and always have the center in their
/// domain. The identity is always present.
struct LocalTranslationSet {
  Vertex center = kBottom;
  InducedSubgraph context;
  Vertex local_center = kBottom;
  std::vector<PartialMap> maps;

  /// Image of an original vertex under maps[i], as an original id.
  Vertex image_of(std::size_t i, Vertex original) const {
    Vertex local = context.local_id(original);
    if (local == kBottom) return kBottom;
    Vertex t = maps[i][local];
    return t == kBottom ? kBottom : context.to_original[static_cast<std::size_t>(t)];
  }
};

struct LocalSearchOptions {
  std::size_t threads = 1;
  std::size_t context_cap = kDefaultContextCap;
  LocalDomain domain = LocalDomain::kContext;
};

inline LocalTranslationSet find_local_translations(const Graph& g, Vertex v, const LocalSearchOptions& options = {}) {
  require_vertex(g, v);
  LocalTranslationSet out;
  out.center = v;
  VertexSet ball = neighborhood(g, v, 2);
  if (ball.size() > options.context_cap) {
    throw ValidationError("graph too dense: N_2(" + std::to_string(v) + ") has " + std::to_string(ball.size()) +
                          " vertices, above the cap of " + std::to_string(options.context_cap));
  }
  out.context = induced_subgraph(g, ball);
  out.local_center = out.context.local_id(v);

  // The center and its neighbors go first: they constrain the rest the most.
  std::vector<Vertex> order{out.local_center};
  for (Vertex w : out.context.graph.neighbors(out.local_center)) order.push_back(w);
  if (options.domain == LocalDomain::kContext) {
    for (std::size_t w = 0; w < ball.size(); ++w) {
      if (std::find(order.begin(), order.end(), static_cast<Vertex>(w)) == order.end()) {
        order.push_back(static_cast<Vertex>(w));
      }
    }
  }

  out.maps = keep_minimal_aligned(detail::CandidateSearch(out.context.graph, order, out.local_center).run());
  out.maps.push_back(PartialMap::identity(ball.size()));
  std::sort(out.maps.begin(), out.maps.end());
  return out;
}

/// find_local_translations for every vertex; entry v belongs to center v.
/// Work is spread over `options.threads` workers; the result does not depend
/// on the worker count.
inline std::vector<LocalTranslationSet> find_all_local_translations(const Graph& g,
                                                                    const LocalSearchOptions& options = {}) {
  const std::size_t n = g.order();
  std::vector<LocalTranslationSet> result(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t v = next++; v < n; v = next++) {
      try {
        result[v] = find_local_translations(g, static_cast<Vertex>(v), options);
      } catch (...) {
        errors[v] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(options.threads, n));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return result;
}

}  // namespace gcf
