#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gcf/error.hpp"

namespace gcf {

/// m signals over n vertices, row-major: row i is signal x_i.
struct SignalMatrix {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<double> values;

  SignalMatrix() = default;
  SignalMatrix(std::size_t rows, std::size_t cols) : m(rows), n(cols), values(rows * cols, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return values[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }

  std::span<double> row(std::size_t i) { return {values.data() + i * n, n}; }
  std::span<const double> row(std::size_t i) const { return {values.data() + i * n, n}; }

  void validate() const {
    if (values.size() != m * n) {
      throw InputError("signal matrix holds " + std::to_string(values.size()) + " values, expected " +
                       std::to_string(m) + "x" + std::to_string(n));
    }
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (!std::isfinite(values[k])) {
        throw InputError("non-finite value at row " + std::to_string(k / n) + ", column " + std::to_string(k % n));
      }
    }
  }

  friend bool operator==(const SignalMatrix&, const SignalMatrix&) = default;
};

/// Averages `channels` planar blocks of columns into one: column j of the
/// result is the mean of columns j, j + n/C, ..., j + (C-1) n/C.
inline SignalMatrix average_channels(const SignalMatrix& s, std::size_t channels) {
  if (channels == 0 || s.n % channels != 0) {
    throw InputError("cannot split " + std::to_string(s.n) + " columns into " + std::to_string(channels) +
                     " channels");
  }
  const std::size_t width = s.n / channels;
  SignalMatrix out(s.m, width);
  for (std::size_t i = 0; i < s.m; ++i) {
    for (std::size_t c = 0; c < channels; ++c) {
      for (std::size_t j = 0; j < width; ++j) out.at(i, j) += s.at(i, c * width + j);
    }
    for (std::size_t j = 0; j < width; ++j) out.at(i, j) /= static_cast<double>(channels);
  }
  return out;
}

}  // namespace gcf
