#include "koch/koch_surface.hpp"

#include "koch/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace koch {

std::array<Vec3, 3> base_triangle() {
  const double r = std::sqrt(3.0) / 3.0;
  std::array<Vec3, 3> p;
  for (int j = 0; j < 3; ++j) {
    double a = 2.0 * std::numbers::pi * j / 3.0;
    p[j] = Vec3(r * std::cos(a), r * std::sin(a), 0.0);
  }
  return p;
}

void validate_n(int N) {
  if (N < 2) throw DomainError("N must be an integer greater than 1");
  if (N % 3 == 0) throw DomainError("N must not be divisible by 3 (no unique middle triangle)");
}

Triangulation triangulation(int N) {
  if (N < 2) throw DomainError("N must be an integer greater than 1");
  const auto p = base_triangle();
  auto lat = [&](int i, int j, int k) { return Vec3((i * p[0] + j * p[1] + k * p[2]) / N); };
  Triangulation t;
  t.N = N;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N - i; ++j) {
      int k = N - 1 - i - j;
      LatticeTriangle tri;
      tri.upward = true;
      tri.lattice = {i, j, k};
      tri.vertices = {lat(i + 1, j, k), lat(i, j + 1, k), lat(i, j, k + 1)};
      t.triangles.push_back(tri);
    }
  for (int i = 0; i + 1 < N; ++i)
    for (int j = 0; j < N - 1 - i; ++j) {
      int k = N - 2 - i - j;
      LatticeTriangle tri;
      tri.upward = false;
      tri.lattice = {i, j, k};
      tri.vertices = {lat(i, j + 1, k + 1), lat(i + 1, j, k + 1), lat(i + 1, j + 1, k)};
      t.triangles.push_back(tri);
    }
  for (auto& tri : t.triangles) tri.centroid = (tri.vertices[0] + tri.vertices[1] + tri.vertices[2]) / 3.0;
  return t;
}

int Triangulation::middle_index() const {
  if (N % 3 == 0) throw DomainError("no unique middle triangle when N is divisible by 3");
  for (std::size_t i = 0; i < triangles.size(); ++i)
    if (triangles[i].centroid.norm() < 1e-12) return static_cast<int>(i);
  throw DomainError("middle triangle not found");
}

namespace {

Similitude planar_map(const LatticeTriangle& tri, int N) {
  Similitude s;
  s.ratio = 1.0 / N;
  s.linear = Mat3::Identity() / N;
  if (!tri.upward) {
    s.linear(0, 0) = -s.linear(0, 0);
    s.linear(1, 1) = -s.linear(1, 1);
  }
  s.translation = tri.centroid;
  return s;
}

bool same_point(const Vec3& a, const Vec3& b) { return (a - b).norm() < 1e-12; }

int shared_count(const LatticeTriangle& a, const LatticeTriangle& b) {
  int n = 0;
  for (const auto& u : a.vertices)
    for (const auto& v : b.vertices) n += same_point(u, v);
  return n;
}

}  // namespace

KochSurfaceSpec build_koch_surface_ifs(int N) {
  validate_n(N);
  const auto p = base_triangle();
  const Triangulation tri = triangulation(N);
  const int mid = tri.middle_index();
  const LatticeTriangle& m = tri.triangles[mid];
  const double height = std::sqrt(6.0) / (3.0 * N);
  const Vec3 apex = m.centroid + Vec3(0, 0, height);

  // neighbours across the edges of the middle triangle
  std::vector<int> nbrs;
  for (int i = 0; i < static_cast<int>(tri.triangles.size()); ++i)
    if (i != mid && shared_count(tri.triangles[i], m) == 2) nbrs.push_back(i);
  const double sign = m.upward ? -1.0 : 1.0;
  std::array<int, 3> base{};
  for (int j = 0; j < 3; ++j) {
    base[j] = *std::max_element(nbrs.begin(), nbrs.end(), [&](int a, int b) {
      return sign * (tri.triangles[a].centroid - m.centroid).dot(p[j]) <
             sign * (tri.triangles[b].centroid - m.centroid).dot(p[j]);
    });
  }
  if (base[0] == base[1] || base[1] == base[2] || base[0] == base[2])
    throw DomainError("ambiguous labelling of the cells next to the peak");

  std::vector<Similitude> maps;
  for (int j = 0; j < 3; ++j) maps.push_back(planar_map(tri.triangles[base[j]], N));

  const Vec3 peak_inside = m.centroid + Vec3(0, 0, height / 4.0);
  for (int j = 0; j < 3; ++j) {
    std::vector<Vec3> edge;
    for (const auto& u : tri.triangles[base[j]].vertices)
      for (const auto& v : m.vertices)
        if (same_point(u, v)) edge.push_back(v);
    int found = 0;
    for (int flip = 0; flip < 2; ++flip) {
      Vec3 src[3] = {p[0], p[1], p[2]};
      Vec3 dst[3] = {apex, edge[flip], edge[1 - flip]};
      Similitude s = similitude_from_triangle(src, dst, 1.0 / N);
      Vec3 normal = s.linear * Vec3::UnitZ();
      Vec3 face_centroid = (dst[0] + dst[1] + dst[2]) / 3.0;
      if (normal.dot(face_centroid - peak_inside) > 0) {
        maps.push_back(s);
        ++found;
      }
    }
    if (found != 1) throw DomainError("could not orient peak face");
  }

  std::vector<int> rest;
  for (int i = 0; i < static_cast<int>(tri.triangles.size()); ++i)
    if (i != mid && std::find(base.begin(), base.end(), i) == base.end()) rest.push_back(i);
  auto row_key = [&](int idx) {
    const auto& t = tri.triangles[idx];
    int pos = 2 * t.lattice[1] + (t.upward ? 0 : 1);
    return std::pair<int, int>(N - 1 - t.lattice[0], -pos);
  };
  std::sort(rest.begin(), rest.end(), [&](int a, int b) { return row_key(a) < row_key(b); });
  for (int i : rest) maps.push_back(planar_map(tri.triangles[i], N));

  std::vector<Vec3> gens{p[0], p[1], p[2], apex};
  auto enclosure = ConvexPolytope::tetrahedron(p[0], p[1], p[2], apex);
  IfsSystem ifs(std::move(maps), "K_" + std::to_string(N), gens, enclosure);

  KochSurfaceSpec spec{N, p, apex, std::move(ifs), {1, 2, 3}, {4, 5, 6}, {}, {}};
  for (int a = 0; a < 3; ++a) {
    spec.corner_maps[a] = 0;
    for (int l = 1; l <= spec.ifs.size(); ++l)
      if (same_point(spec.ifs.map(l).apply(p[a]), p[a])) spec.corner_maps[a] = l;
    if (spec.corner_maps[a] == 0) throw DomainError("no map fixes a base vertex");
  }
  for (int c = 0; c < 3; ++c) {
    const auto& ta = tri.triangles[base[(c + 1) % 3]];
    const auto& tb = tri.triangles[base[(c + 2) % 3]];
    bool ok = false;
    for (const auto& u : ta.vertices)
      for (const auto& v : tb.vertices)
        if (same_point(u, v)) spec.middle_vertices[c] = u, ok = true;
    if (!ok) throw DomainError("cells next to the peak do not meet");
  }
  return spec;
}

Vec3 apex_point(int N) {
  const auto spec = build_koch_surface_ifs(N);
  const auto& ifs = spec.ifs;
  for (int l : spec.peak_cells)
    if (!same_point(ifs.map(l).apply(spec.base_vertices[0]), spec.apex))
      throw DomainError("peak cells do not share the apex");
  // sample with fixed points only so the apex itself is not among the samples
  int depth = 0;
  while (std::pow(ifs.size(), depth + 1) * ifs.size() <= 2e5) ++depth;
  double zmax = -1.0;
  std::vector<Vec3> fixed;
  for (const auto& m : ifs.maps()) fixed.push_back(fixed_point(m));
  for (const auto& s : level_maps(ifs, depth))
    for (const auto& f : fixed) zmax = std::max(zmax, s.apply(f).z());
  const double slack = std::pow(1.0 / N, depth) * ifs.diameter_of_attractor().hi;
  if (zmax > spec.apex.z() + 1e-12 || zmax < spec.apex.z() - slack)
    throw DomainError("sampled maximum height disagrees with the constructed apex");
  return spec.apex;
}

}  // namespace koch
