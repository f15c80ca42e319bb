#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "gcf/graph.hpp"
#include "gcf/signal.hpp"

namespace gcf {

/// Dense symmetric n x n matrix, row-major.
struct SymmetricMatrix {
  std::size_t n = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

/// Sample covariance of the columns, divisor m - 1.
inline SymmetricMatrix covariance_matrix(const SignalMatrix& s) {
  if (s.m < 2) throw InputError("covariance needs at least 2 samples, got " + std::to_string(s.m));
  s.validate();
  const std::size_t n = s.n;
  std::vector<double> mean(n, 0.0);
  for (std::size_t i = 0; i < s.m; ++i)
    for (std::size_t j = 0; j < n; ++j) mean[j] += s.at(i, j);
  for (double& x : mean) x /= static_cast<double>(s.m);

  std::vector<double> centered(s.values.size());
  for (std::size_t i = 0; i < s.m; ++i)
    for (std::size_t j = 0; j < n; ++j) centered[i * n + j] = s.at(i, j) - mean[j];

  SymmetricMatrix c{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < s.m; ++i) {
    const double* r = centered.data() + i * n;
    for (std::size_t a = 0; a < n; ++a) {
      const double ra = r[a];
      double* out = c.values.data() + a * n;
      for (std::size_t b = a; b < n; ++b) out[b] += ra * r[b];
    }
  }
  const double divisor = static_cast<double>(s.m - 1);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      c.values[a * n + b] /= divisor;
      c.values[b * n + a] = c.values[a * n + b];
    }
  }
  return c;
}

/// Pearson correlation; pairs involving a constant column get 0.
inline SymmetricMatrix correlation_matrix(const SignalMatrix& s) {
  SymmetricMatrix c = covariance_matrix(s);
  std::vector<double> sd(c.n);
  for (std::size_t j = 0; j < c.n; ++j) sd[j] = std::sqrt(c(j, j));
  for (std::size_t a = 0; a < c.n; ++a) {
    for (std::size_t b = 0; b < c.n; ++b) {
      double d = sd[a] * sd[b];
      c.values[a * c.n + b] = d > 0 ? c.values[a * c.n + b] / d : 0.0;
    }
  }
  return c;
}

enum class Statistic { kCovariance, kCorrelation };

/// The k vertices other than v with the largest entries in row v, ties to
/// the smaller id, in selection order.
inline std::vector<Vertex> top_k(const SymmetricMatrix& c, std::size_t v, std::size_t k) {
  std::vector<Vertex> others;
  others.reserve(c.n - 1);
  for (std::size_t u = 0; u < c.n; ++u)
    if (u != v) others.push_back(static_cast<Vertex>(u));
  auto more = [&](Vertex a, Vertex b) {
    double ca = c(v, static_cast<std::size_t>(a)), cb = c(v, static_cast<std::size_t>(b));
    return ca != cb ? ca > cb : a < b;
  };
  std::partial_sort(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(k), others.end(), more);
  others.resize(k);
  return others;
}

/// Each vertex keeps its k most covarying vertices; selections are united
/// into an undirected graph. The result may be disconnected: callers decide.
inline Graph knn_graph(const SymmetricMatrix& c, std::size_t k) {
  if (k < 1 || k >= c.n) {
    throw InputError("k must satisfy 1 <= k < n (k = " + std::to_string(k) + ", n = " + std::to_string(c.n) + ")");
  }
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < c.n; ++v) {
    for (Vertex u : top_k(c, v, k)) {
      auto a = static_cast<Vertex>(v);
      edges.emplace_back(std::min(a, u), std::max(a, u));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph::from_edges(c.n, edges);
}

inline Graph knn_covariance_graph(const SignalMatrix& s, std::size_t k = 4,
                                  Statistic statistic = Statistic::kCovariance) {
  if (k < 1 || k >= s.n) {
    throw InputError("k must satisfy 1 <= k < n (k = " + std::to_string(k) + ", n = " + std::to_string(s.n) + ")");
  }
  return knn_graph(statistic == Statistic::kCovariance ? covariance_matrix(s) : correlation_matrix(s), k);
}

}  // namespace gcf
