#pragma once

// Nelder-Mead downhill simplex for small unconstrained problems.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

namespace qcorr {

struct SimplexResult {
  std::vector<double> x;
  double value;
  int iterations;
};

struct SimplexOptions {
  double tolerance = 1e-8;  // stop once max f - min f over the simplex drops below this
  int max_iterations = 200;
};

inline SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                 const std::vector<double>& start, const std::vector<double>& step,
                                 const SimplexOptions& opts = {}) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> pts(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step[i];
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  std::vector<std::size_t> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<std::vector<double>> p2(n + 1);
    std::vector<double> v2(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      p2[i] = pts[order[i]];
      v2[i] = vals[order[i]];
    }
    pts.swap(p2);
    vals.swap(v2);
  };
  auto along = [&](const std::vector<double>& centroid, const std::vector<double>& from, double t) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = centroid[i] + t * (from[i] - centroid[i]);
    return out;
  };

  int it = 0;
  sort_simplex();
  while (it < opts.max_iterations && vals[n] - vals[0] >= opts.tolerance) {
    ++it;
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / static_cast<double>(n);
    }
    const auto reflected = along(centroid, pts[n], -1.0);
    const double fr = f(reflected);
    if (fr < vals[0]) {
      const auto expanded = along(centroid, pts[n], -2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        pts[n] = expanded;
        vals[n] = fe;
      } else {
        pts[n] = reflected;
        vals[n] = fr;
      }
    } else if (fr < vals[n - 1]) {
      pts[n] = reflected;
      vals[n] = fr;
    } else {
      const bool outside = fr < vals[n];
      const auto contracted = along(centroid, outside ? reflected : pts[n], 0.5);
      const double fc = f(contracted);
      if (fc < std::min(fr, vals[n])) {
        pts[n] = contracted;
        vals[n] = fc;
      } else {
        // Shrink toward the best vertex.
        for (std::size_t i = 1; i <= n; ++i) {
          pts[i] = along(pts[0], pts[i], 0.5);
          vals[i] = f(pts[i]);
        }
      }
    }
    sort_simplex();
  }
  return {pts[0], vals[0], it};
}

}  // namespace qcorr
