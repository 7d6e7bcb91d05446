#pragma once
// Independent reference data for tests: the explicit K_2 maps written out
// coordinate by coordinate, and brute-force helpers that work on raw points.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

using V3 = Eigen::Vector3d;

inline const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0), r6 = std::sqrt(6.0);

inline V3 p(int j) {
  switch (j) {
    case 1: return {r3 / 3, 0, 0};
    case 2: return {-r3 / 6, 0.5, 0};
    case 3: return {-r3 / 6, -0.5, 0};
    default: return {0, 0, r6 / 6};
  }
}

inline V3 k2_map(int i, const V3& v) {
  const double x = v.x(), y = v.y(), z = v.z();
  switch (i) {
    case 1:
    case 2:
    case 3: return (v + p(i)) / 2;
    case 4: return {-x / 6 + r2 * z / 3 + r3 / 18, -y / 2, r2 * x / 3 + z / 6 + r6 / 18};
    case 5:
      return {x / 12 + r3 * y / 4 - r2 * z / 6 - r3 / 36, -r3 * x / 12 + y / 4 + r6 * z / 6 + 1.0 / 12,
              r2 * x / 3 + z / 6 + r6 / 18};
    default:
      return {x / 12 - r3 * y / 4 - r2 * z / 6 - r3 / 36, r3 * x / 12 + y / 4 - r6 * z / 6 - 1.0 / 12,
              r2 * x / 3 + z / 6 + r6 / 18};
  }
}

// word w1..wn acts as F_wn o ... o F_w1
inline V3 k2_word(const std::vector<int>& w, V3 v) {
  for (int l : w) v = k2_map(l, v);
  return v;
}

inline std::array<V3, 4> k2_cell_vertices(const std::vector<int>& w) {
  return {k2_word(w, p(1)), k2_word(w, p(2)), k2_word(w, p(3)), k2_word(w, p(4))};
}

inline double diameter(const std::vector<V3>& pts) {
  double d = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, (pts[i] - pts[j]).norm());
  return d;
}

// min over nonempty subsets of pow(diam, s) * total / k, subsets of the given cells
// (each cell = its vertex list); when fixed_k > 0 only subsets of that size.
inline double brute_min_ratio(const std::vector<std::vector<V3>>& cells, double s, double total,
                              int fixed_k = 0) {
  const int m = static_cast<int>(cells.size());
  double best = INFINITY;
  for (unsigned long mask = 1; mask < (1ul << m); ++mask) {
    int k = __builtin_popcountl(mask);
    if (fixed_k && k != fixed_k) continue;
    std::vector<V3> pts;
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1) pts.insert(pts.end(), cells[i].begin(), cells[i].end());
    best = std::min(best, std::pow(diameter(pts), s) * total / k);
  }
  return best;
}

}  // namespace oracle
