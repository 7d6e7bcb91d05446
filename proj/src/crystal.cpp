#include "koch/crystal.hpp"

#include <cmath>

namespace koch {

std::array<Vec3, 4> crystal_tetrahedron() {
  const double a = std::sqrt(2.0) / 4.0;
  return {Vec3(a, a, a), Vec3(a, -a, -a), Vec3(-a, a, -a), Vec3(-a, -a, a)};
}

std::vector<Similitude> CrystalSpec::level1_maps() const {
  std::vector<Similitude> out;
  for (const auto& pl : placements)
    for (const auto& m : surface.ifs.maps()) out.push_back(pl.after(m));
  return out;
}

CrystalSpec build_crystal(int N) {
  KochSurfaceSpec surface = build_koch_surface_ifs(N);
  const auto tet = crystal_tetrahedron();
  std::array<Similitude, 4> placements;
  std::array<std::array<Vec3, 3>, 4> faces;
  for (int k = 0; k < 4; ++k) {
    std::array<Vec3, 3> f;
    for (int i = 0, c = 0; i < 4; ++i)
      if (i != k) f[c++] = tet[i];
    Vec3 outward = -tet[k];
    if ((f[1] - f[0]).cross(f[2] - f[0]).dot(outward) < 0) std::swap(f[1], f[2]);
    Vec3 src[3] = {surface.base_vertices[0], surface.base_vertices[1], surface.base_vertices[2]};
    Vec3 dst[3] = {f[0], f[1], f[2]};
    placements[k] = similitude_from_triangle(src, dst, 1.0);
    faces[k] = f;
  }
  std::vector<SharedEdge> edges;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      std::vector<Vec3> common;
      for (const auto& u : faces[a])
        for (const auto& v : faces[b])
          if ((u - v).norm() < 1e-12) common.push_back(u);
      if (common.size() != 2) throw DomainError("placed faces must share exactly one edge");
      edges.push_back({a, b, common[0], common[1]});
    }
  return CrystalSpec{N, std::move(surface), placements, faces, std::move(edges)};
}

}  // namespace koch
