#pragma once

#include "koch/ifs.hpp"

#include <array>
#include <vector>

namespace koch {

// Vertices of the side-1 triangle T centred at the origin in the plane z = 0:
// p_j = (sqrt3/3)(cos 2pi(j-1)/3, sin 2pi(j-1)/3, 0).
std::array<Vec3, 3> base_triangle();

struct LatticeTriangle {
  bool upward = true;
  // Lattice indices (i, j, k): i + j + k = N-1 for upward, N-2 for downward triangles.
  std::array<int, 3> lattice{};
  // vertices[a] is the image of p_(a+1) under the planar map onto this triangle
  std::array<Vec3, 3> vertices;
  Vec3 centroid = Vec3::Zero();
};

struct Triangulation {
  int N = 0;
  std::vector<LatticeTriangle> triangles;
  // Index of the triangle containing the origin; throws DomainError when N mod 3 == 0.
  int middle_index() const;
};

Triangulation triangulation(int N);

// Map layout of the surface IFS (1-based letters):
//   1..3  planar cells sharing an edge with the middle triangle. K^(j) lies towards p_j
//         when the middle triangle points down (N = 2 mod 3) and towards -p_j when it
//         points up (N = 1 mod 3); for N = 2 these are the corner cells fixing p_j.
//   4..6  lateral faces of the tetrahedron over the middle triangle; face 3+j stands on
//         the edge shared with K^(j). Each sends p_1 to the apex.
//   7..   remaining planar cells in row-major order: rows are strips parallel to the
//         edge p_2 p_3 starting at p_1, and cells in a row run from the p_2 side to the
//         p_3 side.
// Planar maps are x -> x/N + c (upward) or x -> R_pi x / N + c (downward), with c the
// target centroid and R_pi the rotation by pi about the z axis.
struct KochSurfaceSpec {
  int N;
  std::array<Vec3, 3> base_vertices;
  Vec3 apex;
  IfsSystem ifs;
  std::array<int, 3> base_cells{1, 2, 3};
  std::array<int, 3> peak_cells{4, 5, 6};
  // corner_maps[a] is the map fixing p_(a+1)
  std::array<int, 3> corner_maps{};
  // middle_vertices[a] is the vertex of the middle triangle shared by K^(b) and K^(c),
  // {a,b,c} = {0,1,2}
  std::array<Vec3, 3> middle_vertices;
};

void validate_n(int N);
KochSurfaceSpec build_koch_surface_ifs(int N);

// Apex of the tetrahedral peak, cross-checked against the highest sampled attractor point.
Vec3 apex_point(int N);

}  // namespace koch
