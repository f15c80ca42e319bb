#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gcf/conv_scheme.hpp"
#include "gcf/downscale.hpp"
#include "gcf/graph.hpp"
#include "gcf/proxy.hpp"
#include "gcf/translations.hpp"

namespace gcf {

/// Central vertex of an H x W grid, the seed used for grid checks.
inline Vertex grid_center(std::size_t height, std::size_t width) {
  return static_cast<Vertex>(((height - 1) / 2) * width + (width - 1) / 2);
}

/// Vertex map of the (di, dj) shift on an H x W grid; kBottom where it exits.
inline std::vector<Vertex> grid_shift(std::size_t height, std::size_t width, int di, int dj) {
  std::vector<Vertex> m(height * width, kBottom);
  const auto h = static_cast<int>(height), w = static_cast<int>(width);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      const int ti = i + di, tj = j + dj;
      if (ti >= 0 && tj >= 0 && ti < h && tj < w) m[static_cast<std::size_t>(i * w + j)] = ti * w + tj;
    }
  }
  return m;
}

/// Kernel offsets in slot order for an interior seed: center, up, left, right, down.
inline std::vector<std::pair<int, int>> grid_kernel_offsets() { return {{0, 0}, {-1, 0}, {0, -1}, {0, 1}, {1, 0}}; }

/// The scheme an exact grid family compiles to, with neighbours `step` pixels away.
inline ConvScheme expected_grid_scheme(std::size_t height, std::size_t width, int step = 1) {
  ConvScheme s;
  s.kappa = 5;
  s.n_in = height * width;
  s.v0 = grid_center(height, width);
  std::vector<std::vector<Vertex>> shifts;
  for (auto [di, dj] : grid_kernel_offsets()) shifts.push_back(grid_shift(height, width, di * step, dj * step));
  for (std::size_t v = 0; v < height * width; ++v) {
    s.out.push_back(static_cast<Vertex>(v));
    std::vector<Vertex> row;
    for (const auto& m : shifts) row.push_back(m[v]);
    s.index.push_back(std::move(row));
  }
  return s;
}

struct GridReport {
  bool pass = true;
  std::vector<std::string> lines;

  void fail(std::string line) {
    pass = false;
    lines.push_back("FAIL " + std::move(line));
  }
  void ok(std::string line) { lines.push_back("ok   " + std::move(line)); }
};

/// First row where two schemes differ, or -1.
inline long first_mismatch(const ConvScheme& a, const ConvScheme& b) {
  const std::size_t rows = std::min(a.rows(), b.rows());
  for (std::size_t i = 0; i < rows; ++i) {
    if (a.out[i] != b.out[i] || a.index[i] != b.index[i]) return static_cast<long>(i);
  }
  return a.rows() == b.rows() ? -1 : static_cast<long>(rows);
}

inline std::string format_row(const ConvScheme& s, std::size_t i) {
  if (i >= s.rows()) return "<missing>";
  std::string out = std::to_string(s.out[i]) + ": [";
  for (std::size_t p = 0; p < s.index[i].size(); ++p) out += (p ? "," : "") + std::to_string(s.index[i][p]);
  return out + "]";
}

/// Runs the pipeline on an H x W grid from its central seed and compares
/// every stage with the exact image-shift answer. `stride` 0 skips the
/// downscale stage; `scheme`, when given, is checked instead of the compiled one.
inline GridReport verify_grid(std::size_t height, std::size_t width, std::size_t stride = 0,
                              const ConvScheme* scheme = nullptr, const LocalSearchOptions& options = {}) {
  if (height < 3 || width < 3) throw InputError("verify-grid needs H, W >= 3 for an interior seed");
  GridReport report;
  const Graph g = grid_graph(height, width);
  const Vertex seed = grid_center(height, width);
  const auto locals = find_all_local_translations(g, options);
  const PropagationResult result = propagate(g, locals, seed);
  const ProxyFamily& f = result.family;

  if (f.kappa != 5) report.fail("kappa = " + std::to_string(f.kappa) + ", expected 5");
  else report.ok("kappa = 5");
  if (!result.unreached.empty()) report.fail(std::to_string(result.unreached.size()) + " unreached centers");
  else report.ok("every center reached");

  const auto offsets = grid_kernel_offsets();
  for (std::size_t p = 0; p < f.kappa && p < offsets.size(); ++p) {
    auto [di, dj] = offsets[p];
    const auto expected = grid_shift(height, width, di, dj);
    const std::string name = "psi_" + std::to_string(p) + " = shift(" + std::to_string(di) + "," + std::to_string(dj) + ")";
    if (f.psi[p] != expected) {
      std::size_t v = 0;
      while (f.psi[p][v] == expected[v]) ++v;
      report.fail(name + ": vertex " + std::to_string(v) + " maps to " + std::to_string(f.psi[p][v]) + ", expected " +
                  std::to_string(expected[v]));
      continue;
    }
    const std::size_t defined = height * width - static_cast<std::size_t>(std::count(expected.begin(), expected.end(), kBottom));
    report.ok(name + ", domain " + std::to_string(defined));
  }

  const ConvScheme compiled = compile_scheme(f);
  const ConvScheme& subject = scheme ? *scheme : compiled;
  const ConvScheme expected_scheme = expected_grid_scheme(height, width);
  if (long row = first_mismatch(subject, expected_scheme); row >= 0) {
    report.fail("scheme row " + std::to_string(row) + ": got " + format_row(subject, static_cast<std::size_t>(row)) +
                ", expected " + format_row(expected_scheme, static_cast<std::size_t>(row)));
  } else {
    report.ok("scheme matches the 5-point stencil");
  }

  if (stride > 0) {
    const DownscalePlan plan = downscale(g, f, stride);
    const std::string tag = "stride " + std::to_string(stride) + ": ";
    if (!separation_violations(g, plan.kept, stride).empty()) report.fail(tag + "kept vertices closer than the stride");
    if (!coverage_violations(g, plan.kept, stride, seed).empty()) report.fail(tag + "kept vertex not covered");
    if (stride == 2) {
      VertexSet parity;
      const std::size_t seed_parity = (static_cast<std::size_t>(seed) / width + static_cast<std::size_t>(seed) % width) % 2;
      for (std::size_t v = 0; v < height * width; ++v)
        if ((v / width + v % width) % 2 == seed_parity) parity.push_back(static_cast<Vertex>(v));
      if (plan.kept != parity) report.fail(tag + "kept set is not the seed's parity class");
      else report.ok(tag + "kept set is the checkerboard (" + std::to_string(parity.size()) + " vertices)");
      bool all_shifts = plan.kappa() == offsets.size();
      for (std::size_t p = 0; p < plan.kappa() && p < offsets.size(); ++p) {
        auto [di, dj] = offsets[p];
        const auto shift = grid_shift(height, width, 2 * di, 2 * dj);
        bool same = true;
        for (std::size_t i = 0; i < plan.kept.size(); ++i) same = same && plan.induced[p][i] == shift[static_cast<std::size_t>(plan.kept[i])];
        if (!same) report.fail(tag + "induced map " + std::to_string(p) + " is not the 2-pixel shift");
        all_shifts = all_shifts && same;
      }
      if (all_shifts) report.ok(tag + "induced maps are the 2-pixel shifts");
    }
  }
  return report;
}

}  // namespace gcf
