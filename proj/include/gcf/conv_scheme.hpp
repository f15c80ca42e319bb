#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gcf/graph.hpp"
#include "gcf/proxy.hpp"

namespace gcf {

/// Weight-sharing scheme of an extended convolution layer: output vertex
/// out[i] reads input vertex index[i][p] through weight p (kBottom = no input).
struct ConvScheme {
  std::size_t kappa = 0;
  std::size_t n_in = 0;
  VertexSet out;
  std::vector<std::vector<Vertex>> index;
  Vertex v0 = kBottom;
  int level = 0;

  std::size_t rows() const { return out.size(); }

  /// Checks shape and index ranges; throws InputError.
  void validate() const {
    if (index.size() != out.size()) {
      throw InputError("scheme has " + std::to_string(out.size()) + " output vertices but " +
                       std::to_string(index.size()) + " index rows");
    }
    for (std::size_t i = 0; i < index.size(); ++i) {
      if (index[i].size() != kappa) {
        throw InputError("scheme row " + std::to_string(i) + " has " + std::to_string(index[i].size()) +
                         " entries, expected kappa = " + std::to_string(kappa));
      }
      for (Vertex s : index[i]) {
        if (s != kBottom && (s < 0 || static_cast<std::size_t>(s) >= n_in)) {
          throw InputError("scheme row " + std::to_string(i) + " references input " + std::to_string(s) +
                           " outside 0.." + std::to_string(n_in) + "-1");
        }
      }
    }
  }

  friend bool operator==(const ConvScheme&, const ConvScheme&) = default;
};

/// index[i][p] = psi_p(out[i]). Rows follow ascending vertex id.
inline ConvScheme compile_scheme(const ProxyFamily& f, VertexSet out, int level = 0) {
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  ConvScheme s;
  s.kappa = f.kappa;
  s.n_in = f.order();
  s.v0 = f.v0;
  s.level = level;
  for (Vertex v : out) {
    if (v < 0 || static_cast<std::size_t>(v) >= f.order()) {
      throw InputError("output vertex " + std::to_string(v) + " is not a vertex of the family");
    }
    if (!f.reached(v)) {
      throw ValidationError("output vertex " + std::to_string(v) + " was never reached by the kernel");
    }
    std::vector<Vertex> row(f.kappa);
    for (std::size_t p = 0; p < f.kappa; ++p) row[p] = f.psi[p][static_cast<std::size_t>(v)];
    s.index.push_back(std::move(row));
  }
  s.out = std::move(out);
  return s;
}

/// Scheme over every reached center.
inline ConvScheme compile_scheme(const ProxyFamily& f) {
  VertexSet out;
  for (std::size_t c = 0; c < f.order(); ++c)
    if (f.reached(static_cast<Vertex>(c))) out.push_back(static_cast<Vertex>(c));
  return compile_scheme(f, std::move(out));
}

enum class Activation { kIdentity, kRelu };

struct ConvLayerParams {
  std::vector<double> weights;
  double bias = 0.0;
  Activation activation = Activation::kIdentity;
};

/// y_i = h(sum_p w_p x[index[i][p]] + b), undefined entries skipped.
inline std::vector<double> forward(const ConvScheme& s, const ConvLayerParams& params, std::span<const double> x) {
  if (x.size() != s.n_in) {
    throw InputError("input signal has " + std::to_string(x.size()) + " entries, scheme expects " +
                     std::to_string(s.n_in));
  }
  if (params.weights.size() != s.kappa) {
    throw InputError("layer has " + std::to_string(params.weights.size()) + " weights, scheme kappa is " +
                     std::to_string(s.kappa));
  }
  std::vector<double> y(s.rows());
  for (std::size_t i = 0; i < s.rows(); ++i) {
    double acc = params.bias;
    const auto& row = s.index[i];
    for (std::size_t p = 0; p < s.kappa; ++p) {
      if (row[p] != kBottom) acc += params.weights[p] * x[static_cast<std::size_t>(row[p])];
    }
    y[i] = params.activation == Activation::kRelu ? std::max(0.0, acc) : acc;
  }
  return y;
}

struct SchemeStats {
  std::size_t rows = 0;
  std::size_t kappa = 0;
  std::size_t bottoms = 0;
  double fill_ratio = 1.0;              // defined entries / all entries
  std::vector<std::size_t> column_defined;  // defined entries per kernel index
};

inline SchemeStats scheme_stats(const ConvScheme& s) {
  SchemeStats st;
  st.rows = s.rows();
  st.kappa = s.kappa;
  st.column_defined.assign(s.kappa, 0);
  for (const auto& row : s.index) {
    for (std::size_t p = 0; p < s.kappa; ++p) {
      if (row[p] == kBottom) ++st.bottoms;
      else ++st.column_defined[p];
    }
  }
  const std::size_t total = st.rows * st.kappa;
  st.fill_ratio = total == 0 ? 1.0 : static_cast<double>(total - st.bottoms) / static_cast<double>(total);
  return st;
}

}  // namespace gcf
