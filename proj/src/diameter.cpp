#include "koch/diameter.hpp"

#include "koch/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace koch {

namespace {

const std::vector<Vec3>& samples_at(const IfsSystem& ifs, const Cell& c, int depth, Cell& scratch) {
  if (c.depth == depth) return c.sample_points;
  scratch = make_cell(ifs, c.word, depth);
  return scratch.sample_points;
}

double level_ratio(const IfsSystem& ifs, int levels) { return std::pow(ifs.max_ratio(), levels); }

}  // namespace

DiameterInterval diameter_interval(const IfsSystem& ifs, const std::vector<Cell>& cells, int depth) {
  if (cells.empty()) throw DomainError("diameter of an empty family");
  const int n = static_cast<int>(cells.front().word.size());
  std::vector<Vec3> samples, corners;
  Cell scratch;
  for (const auto& c : cells) {
    if (static_cast<int>(c.word.size()) != n) throw DomainError("cells from different levels");
    const auto& s = samples_at(ifs, c, depth, scratch);
    samples.insert(samples.end(), s.begin(), s.end());
    corners.insert(corners.end(), c.enclosure_vertices.begin(), c.enclosure_vertices.end());
  }
  double lo = geom::max_pairwise_distance(samples);
  double hi = lo + 2.0 * level_ratio(ifs, n + depth) * ifs.diameter_of_attractor().hi;
  hi = std::min(hi, geom::max_pairwise_distance(corners));
  hi = std::max(hi, lo);
  return {lo * (1 - kRoundoff), hi * (1 + kRoundoff), depth};
}

DiameterInterval hausdorff_distance_interval(const IfsSystem& ifs, const Cell& a, const Cell& b,
                                             int depth) {
  const int n = static_cast<int>(std::max(a.word.size(), b.word.size()));
  Cell sa, sb;
  const auto& pa = samples_at(ifs, a, depth, sa);
  const auto& pb = samples_at(ifs, b, depth, sb);
  geom::KdTree ta(pa), tb(pb);
  double d = std::max(geom::directed_hausdorff(pa, tb), geom::directed_hausdorff(pb, ta));
  // every point of a cell is within ratio^(n+depth) |K| of one of its samples
  double eps = level_ratio(ifs, n + depth) * ifs.diameter_of_attractor().hi;
  return {std::max(0.0, d - eps) * (1 - kRoundoff), (d + eps) * (1 + kRoundoff), depth};
}

int default_hausdorff_depth(const IfsSystem& ifs, std::size_t max_points) {
  int m = 0;
  double count = static_cast<double>(ifs.generators().size());
  while (count * ifs.size() <= static_cast<double>(max_points)) {
    count *= ifs.size();
    ++m;
  }
  return m;
}

DiameterInterval max_level1_hausdorff(const IfsSystem& ifs, int depth) {
  std::vector<Cell> cells;
  for (int i = 1; i <= ifs.size(); ++i) cells.push_back(make_cell(ifs, Word{i}, depth));
  DiameterInterval best{0.0, 0.0, depth};
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      auto d = hausdorff_distance_interval(ifs, cells[i], cells[j], depth);
      best.lo = std::max(best.lo, d.lo);
      best.hi = std::max(best.hi, d.hi);
    }
  return best;
}

}  // namespace koch
