#pragma once

#include "koch/ifs.hpp"

#include <array>
#include <map>
#include <optional>
#include <vector>

namespace koch {

// Exact cell-level predicates for attractors whose enclosure vertices lie in K.
// Cells are named by words; regions are unions of cells of any levels.
class CellGeometry {
 public:
  explicit CellGeometry(const IfsSystem& ifs, int refine_cap = 6);

  const IfsSystem& ifs() const { return *ifs_; }

  std::vector<Vec3> vertices(const Word& w) const;

  // true when the two cells share a point. Refines both cells until a common vertex
  // image or a separating plane is found; throws AmbiguousGeometry past the cap.
  bool intersects(const Word& a, const Word& b) const;
  bool intersects_region(const Word& cell, const std::vector<Word>& region) const;

  // true when K^(cell) lies in the union of the region cells (up to measure zero).
  bool contained(const Word& cell, const std::vector<Word>& region) const;

 private:
  bool intersects_rec(const Word& a, const Similitude& fa, const Word& b, const Similitude& fb,
                      int base_level) const;

  const IfsSystem* ifs_;
  int cap_;
};

// Lookup of level-n cells by their vertex images (rounded to 1e-9).
class CellIndex {
 public:
  CellIndex(const IfsSystem& ifs, int n);
  int level() const { return n_; }
  std::optional<int> find(const std::vector<Vec3>& verts) const;

 private:
  using Key = std::vector<std::array<long long, 3>>;
  static Key key_of(const std::vector<Vec3>& verts);
  int n_;
  std::map<Key, int> index_;
};

}  // namespace koch
