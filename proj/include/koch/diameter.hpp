#pragma once

#include "koch/ifs.hpp"

#include <vector>

namespace koch {

// Certified enclosure of |union of cells|. All cells must come from `ifs` and share
// one level. Sample points are regenerated when a cell was built at another depth.
DiameterInterval diameter_interval(const IfsSystem& ifs, const std::vector<Cell>& cells, int depth);

// Certified enclosure of the Hausdorff distance between two cells of one level.
DiameterInterval hausdorff_distance_interval(const IfsSystem& ifs, const Cell& a, const Cell& b,
                                             int depth);

// Depth used when none is given: the largest m with |generators| * M^m <= max_points.
int default_hausdorff_depth(const IfsSystem& ifs, std::size_t max_points = 20000);

// max over level-1 pairs of the Hausdorff distance, as [max lo, max hi].
DiameterInterval max_level1_hausdorff(const IfsSystem& ifs, int depth);

}  // namespace koch
