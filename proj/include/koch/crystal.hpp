#pragma once

#include "koch/koch_surface.hpp"

#include <array>
#include <vector>

namespace koch {

struct SharedEdge {
  int a, b;          // placement indices
  Vec3 from, to;     // common base edge
};

// Four copies of K_N glued on the faces of a regular tetrahedron of side 1 centred at
// the origin, peaks pointing away from the tetrahedron. For N = 2 every apex lands on
// a vertex of the cube [-sqrt2/4, sqrt2/4]^3.
struct CrystalSpec {
  int N;
  KochSurfaceSpec surface;
  std::array<Similitude, 4> placements;          // rigid motions, ratio 1
  std::array<std::array<Vec3, 3>, 4> faces;      // placed base triangles
  std::vector<SharedEdge> shared_edges;

  // placement o F_i for every placement and map: 4 (N^2+2) maps
  std::vector<Similitude> level1_maps() const;
};

// Vertices of the regular tetrahedron of side 1 inscribed in the cube of side sqrt2/2.
std::array<Vec3, 4> crystal_tetrahedron();

CrystalSpec build_crystal(int N);

}  // namespace koch
