#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"

namespace polarmol {

/// Uniform radial grid [r_min, r_max] with n nodes, in bohr.
struct RadialGrid {
  double r_min = 0.0;
  double r_max = 0.0;
  std::size_t n = 0;

  double spacing() const { return (r_max - r_min) / static_cast<double>(n - 1); }
  double node(std::size_t i) const { return r_min + spacing() * static_cast<double>(i); }

  std::vector<double> nodes() const {
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = node(i);
    return r;
  }

  std::size_t nearest_node(double r) const {
    const double x = std::round((r - r_min) / spacing());
    if (x <= 0.0) return 0;
    if (x >= static_cast<double>(n - 1)) return n - 1;
    return static_cast<std::size_t>(x);
  }

  void validate() const {
    if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max))
      throw ConfigError("grid: require 0 < r_min < r_max");
    if (n < 16) throw ConfigError("grid: require at least 16 points");
  }

  bool operator==(const RadialGrid&) const = default;

  /// Same spacing and extent as [r_min, r_max] with n nodes, shifted by less
  /// than half a spacing so that `anchor` falls exactly on a node.
  static RadialGrid aligned(double r_min, double r_max, std::size_t n, double anchor) {
    RadialGrid g{r_min, r_max, n};
    const double h = g.spacing();
    const double k = std::round((anchor - r_min) / h);
    g.r_min = anchor - k * h;
    g.r_max = g.r_min + h * static_cast<double>(n - 1);
    return g;
  }
};

}  // namespace polarmol
