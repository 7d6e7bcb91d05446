#include "koch/cell_geometry.hpp"

#include "koch/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace koch {

namespace {

constexpr double kTouch = 1e-12;

std::vector<Vec3> images(const Similitude& f, const ConvexPolytope& p) {
  std::vector<Vec3> out;
  out.reserve(p.vertices.size());
  for (const auto& v : p.vertices) out.push_back(f.apply(v));
  return out;
}

bool share_vertex(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  for (const auto& u : a)
    for (const auto& v : b)
      if ((u - v).cwiseAbs().maxCoeff() <= kTouch) return true;
  return false;
}

bool related(const Word& a, const Word& b) { return a.has_suffix(b) || b.has_suffix(a); }

}  // namespace

CellGeometry::CellGeometry(const IfsSystem& ifs, int refine_cap) : ifs_(&ifs), cap_(refine_cap) {
  if (!ifs.vertex_exact()) throw DomainError("cell predicates need an enclosure with vertices in K");
}

std::vector<Vec3> CellGeometry::vertices(const Word& w) const {
  return images(compose_word(*ifs_, w), ifs_->enclosure());
}

bool CellGeometry::intersects(const Word& a, const Word& b) const {
  if (related(a, b)) return true;
  const int base = static_cast<int>(std::max(a.size(), b.size()));
  return intersects_rec(a, compose_word(*ifs_, a), b, compose_word(*ifs_, b), base);
}

bool CellGeometry::intersects_rec(const Word& a, const Similitude& fa, const Word& b,
                                  const Similitude& fb, int base_level) const {
  if (related(a, b)) return true;
  const auto& enc = ifs_->enclosure();
  auto va = images(fa, enc), vb = images(fb, enc);
  if (share_vertex(va, vb)) return true;
  if (geom::separation_gap(va, vb, enc) > kTouch) return false;
  if (static_cast<int>(std::min(a.size(), b.size())) >= base_level + cap_)
    throw AmbiguousGeometry("cells " + a.str() + " and " + b.str() +
                            " neither touch nor separate at the refinement cap");
  // refine the larger cell; both when they are the same size
  const bool split_a = fa.ratio >= fb.ratio * (1 - 1e-9);
  const bool split_b = fb.ratio >= fa.ratio * (1 - 1e-9);
  const int m = ifs_->size();
  for (int i = 1; i <= (split_a ? m : 1); ++i) {
    Word ca = split_a ? a.prepend(i) : a;
    Similitude ga = split_a ? fa.after(ifs_->map(i)) : fa;
    for (int j = 1; j <= (split_b ? m : 1); ++j) {
      Word cb = split_b ? b.prepend(j) : b;
      Similitude gb = split_b ? fb.after(ifs_->map(j)) : fb;
      if (intersects_rec(ca, ga, cb, gb, base_level)) return true;
    }
  }
  return false;
}

bool CellGeometry::intersects_region(const Word& cell, const std::vector<Word>& region) const {
  for (const auto& r : region)
    if (intersects(cell, r)) return true;
  return false;
}

bool CellGeometry::contained(const Word& cell, const std::vector<Word>& region) const {
  std::size_t deepest = 0;
  for (const auto& r : region) {
    if (cell.has_suffix(r)) return true;
    deepest = std::max(deepest, r.size());
  }
  if (cell.size() >= deepest) return false;
  bool any = false;
  for (const auto& r : region) any = any || r.has_suffix(cell);
  if (!any) return false;
  for (int i = 1; i <= ifs_->size(); ++i)
    if (!contained(cell.prepend(i), region)) return false;
  return true;
}

CellIndex::Key CellIndex::key_of(const std::vector<Vec3>& verts) {
  Key k;
  for (const auto& v : verts)
    k.push_back({std::llround(v.x() * 1e9), std::llround(v.y() * 1e9), std::llround(v.z() * 1e9)});
  std::sort(k.begin(), k.end());
  return k;
}

CellIndex::CellIndex(const IfsSystem& ifs, int n) : n_(n) {
  auto maps = level_maps(ifs, n);
  for (std::size_t i = 0; i < maps.size(); ++i)
    index_.emplace(key_of(images(maps[i], ifs.enclosure())), static_cast<int>(i));
}

std::optional<int> CellIndex::find(const std::vector<Vec3>& verts) const {
  auto it = index_.find(key_of(verts));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace koch
