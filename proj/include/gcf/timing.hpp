#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "gcf/graph.hpp"
#include "gcf/grid.hpp"
#include "gcf/proxy.hpp"
#include "gcf/translations.hpp"

namespace gcf {

struct StageTiming {
  std::size_t n = 0;
  double local_seconds = 0;
  double propagate_seconds = 0;
};

struct LinearityReport {
  std::vector<StageTiming> rows;
  double max_ratio = 6.0;

  /// t(next) / t(previous) for one stage; sizes are expected to grow 4x.
  std::vector<double> ratios(bool local) const {
    std::vector<double> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      double a = local ? rows[i - 1].local_seconds : rows[i - 1].propagate_seconds;
      double b = local ? rows[i].local_seconds : rows[i].propagate_seconds;
      out.push_back(b / std::max(a, 1e-9));
    }
    return out;
  }

  bool pass() const {
    for (bool local : {true, false})
      for (double r : ratios(local))
        if (r > max_ratio) return false;
    return true;
  }

  std::string format() const {
    std::string out = "n\tlocal_s\tpropagate_s\n";
    for (const auto& r : rows) {
      out += std::to_string(r.n) + "\t" + std::to_string(r.local_seconds) + "\t" + std::to_string(r.propagate_seconds) + "\n";
    }
    for (bool local : {true, false}) {
      out += local ? "local ratios:" : "propagate ratios:";
      for (double r : ratios(local)) out += " " + std::to_string(r);
      out += "\n";
    }
    out += std::string("linearity (ratio <= ") + std::to_string(max_ratio) + "): " + (pass() ? "PASS" : "FAIL") + "\n";
    return out;
  }
};

/// Times both steps of find-translations on square grids of the given
/// orders (each must be a perfect square). Each time is the best of `repeat` runs.
inline LinearityReport time_grid_pipeline(const std::vector<std::size_t>& orders, const LocalSearchOptions& options = {},
                                          std::size_t repeat = 1) {
  using clock = std::chrono::steady_clock;
  LinearityReport report;
  for (std::size_t n : orders) {
    const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (side * side != n) throw InputError("timing order " + std::to_string(n) + " is not a perfect square");
    const Graph g = grid_graph(side, side);
    StageTiming t{n, 1e300, 1e300};
    for (std::size_t k = 0; k < std::max<std::size_t>(repeat, 1); ++k) {
      auto t0 = clock::now();
      auto locals = find_all_local_translations(g, options);
      auto t1 = clock::now();
      auto result = propagate(g, locals, grid_center(side, side));
      auto t2 = clock::now();
      t.local_seconds = std::min(t.local_seconds, std::chrono::duration<double>(t1 - t0).count());
      t.propagate_seconds = std::min(t.propagate_seconds, std::chrono::duration<double>(t2 - t1).count());
      if (result.family.kappa == 0) throw InvariantError("empty family");
    }
    report.rows.push_back(t);
  }
  return report;
}

}  // namespace gcf
