#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "gcf/proxy.hpp"
#include "gcf/signal.hpp"

namespace gcf {

/// Push-forward of x along psi_p: y[psi_p(v)] = x[v]; untouched entries get `fill`.
inline std::vector<double> translate_signal(const ProxyFamily& f, std::size_t p, std::span<const double> x,
                                            double fill = 0.0) {
  if (p >= f.kappa) {
    throw InputError("kernel index " + std::to_string(p) + " out of range (kappa = " + std::to_string(f.kappa) + ")");
  }
  if (x.size() != f.order()) {
    throw InputError("signal has " + std::to_string(x.size()) + " entries, family covers " +
                     std::to_string(f.order()) + " vertices");
  }
  const auto& psi = f.psi[p];
  std::vector<double> y(x.size(), fill);
  std::vector<Vertex> source(x.size(), kBottom);
  for (std::size_t v = 0; v < x.size(); ++v) {
    const Vertex t = psi[v];
    if (t == kBottom) continue;
    auto& s = source[static_cast<std::size_t>(t)];
    if (s != kBottom) {
      throw InvariantError("translation " + std::to_string(p) + " is not injective: vertices " + std::to_string(s) +
                           " and " + std::to_string(v) + " both map to " + std::to_string(t));
    }
    s = static_cast<Vertex>(v);
    y[static_cast<std::size_t>(t)] = x[v];
  }
  return y;
}

/// translate_signal applied `repetitions` times.
inline std::vector<double> translate_signal(const ProxyFamily& f, std::size_t p, std::span<const double> x,
                                            std::size_t repetitions, double fill) {
  std::vector<double> y(x.begin(), x.end());
  for (std::size_t k = 0; k < repetitions; ++k) y = translate_signal(f, p, y, fill);
  return y;
}

struct AugmentationSpec {
  std::vector<std::size_t> indices;  // kernel indices to draw from
  std::size_t repetitions = 1;       // compositions per copy
  std::size_t draws = 1;             // translated copies per input row
  double fill = 0.0;

  void validate(const ProxyFamily& f) const {
    if (indices.empty()) throw InputError("augmentation needs at least one kernel index");
    if (repetitions < 1) throw InputError("repetitions must be at least 1");
    for (std::size_t p : indices) {
      if (p >= f.kappa) {
        throw InputError("kernel index " + std::to_string(p) + " out of range (kappa = " + std::to_string(f.kappa) + ")");
      }
    }
  }
};

/// The m input rows followed by `draws` blocks of m translated rows. Every
/// translated row draws its own index from spec.indices.
inline SignalMatrix augment_dataset(const SignalMatrix& s, const AugmentationSpec& spec, const ProxyFamily& f,
                                    std::uint64_t seed) {
  spec.validate(f);
  s.validate();
  SignalMatrix out(s.m * (1 + spec.draws), s.n);
  std::copy(s.values.begin(), s.values.end(), out.values.begin());
  std::mt19937_64 rng(seed);
  for (std::size_t d = 0; d < spec.draws; ++d) {
    for (std::size_t i = 0; i < s.m; ++i) {
      const std::size_t p = spec.indices[rng() % spec.indices.size()];
      auto y = translate_signal(f, p, s.row(i), spec.repetitions, spec.fill);
      std::copy(y.begin(), y.end(), out.row((d + 1) * s.m + i).begin());
    }
  }
  return out;
}

}  // namespace gcf
