#pragma once

#include "koch/ifs.hpp"

#include <string>
#include <vector>

namespace koch {

struct OscReport {
  bool pass = true;
  int depth = 0;
  std::uint64_t points_checked = 0;
  std::uint64_t pairs_checked = 0;
  double min_separation_gap = 0.0;  // smallest certified gap over pairs (>= -tol when touching)
  std::vector<std::string> violations;
};

// Checks S_w(V) within V for all words of length 1..depth (vertex images, slack 1e-12)
// and that S_i(V), S_j(V) have disjoint interiors for i != j (separating axis).
OscReport check_open_set_condition(const IfsSystem& ifs, const ConvexPolytope& open_polytope,
                                   int depth);

}  // namespace koch
