#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "scwig/errors.hpp"

namespace scwig {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Newton iteration on the Legendre recurrence; accurate to ~1e-15 for
/// orders up to a few hundred.
inline GaussRule gauss_legendre(int order) {
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      dp = order * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[order - 1 - i] = z;
    rule.weights[i] = rule.weights[order - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return rule;
}

/// Composite Simpson rule for equally spaced samples. Requires an odd number
/// of samples (even number of intervals).
inline double simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n == 1) return 0.0;
  if (n % 2 == 0) throw DimensionMismatch("simpson: need an odd number of samples");
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) (i % 2 ? odd : even) += f[i];
  return h / 3.0 * (f[0] + f[n - 1] + 4.0 * odd + 2.0 * even);
}

/// Running Simpson integral at every even sample index; odd indices use the
/// trapezoid on the last interval. Result has the same length as f.
inline std::vector<double> cumulative_simpson(std::span<const double> f, double h) {
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t i = 2; i < f.size(); i += 2) {
    out[i] = out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
    out[i - 1] = out[i - 2] + 0.5 * h * (f[i - 2] + f[i - 1]);
  }
  if (f.size() % 2 == 0 && f.size() >= 2) {
    const std::size_t i = f.size() - 1;
    out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
  }
  return out;
}

}  // namespace scwig
