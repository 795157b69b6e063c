#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "colombeau/errors.hpp"

namespace colombeau {

// Geometric grid eps_k = base^{-k}, k = k_min..k_max.  base > 1 so the grid
// is strictly decreasing in k; estimators rely on that ordering.
struct EpsGrid {
  double base = 2.0;
  int k_min = 6;
  int k_max = 40;

  void validate() const {
    if (!(base > 1.0)) throw InvalidConfig("EpsGrid: base must exceed 1");
    if (k_min < 0) throw InvalidConfig("EpsGrid: k_min must be nonnegative");
    if (k_max < k_min) throw InvalidConfig("EpsGrid: k_max < k_min");
  }

  double eps(int k) const { return std::pow(base, -static_cast<double>(k)); }

  std::vector<double> samples() const {
    validate();
    std::vector<double> out;
    out.reserve(static_cast<size_t>(k_max - k_min + 1));
    for (int k = k_min; k <= k_max; ++k) out.push_back(eps(k));
    return out;
  }

  int size() const { return k_max - k_min + 1; }

  std::string describe() const;

  // Deep grid: wide dynamic range for nets whose error is relative, so the
  // log-log fit sees clean slopes down to eps = 2^-40.
  static EpsGrid deep() { return EpsGrid{2.0, 6, 40}; }
  // Shallow grids: fine stride over moderate eps for defect nets whose
  // signal would sink below the double-precision floor on the deep grid.
  static EpsGrid shallow4() { return EpsGrid{std::pow(2.0, 0.25), 4, 28}; }
  static EpsGrid shallow8() { return EpsGrid{std::pow(2.0, 0.125), 8, 48}; }
};

}  // namespace colombeau
