#include "koch/mesh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <utility>
#include <ostream>

namespace koch {

std::int64_t VertexWelder::key(std::int64_t i, std::int64_t j, std::int64_t k) const {
  return (i * 73856093) ^ (j * 19349663) ^ (k * 83492791);
}

int VertexWelder::insert(const Vec3& p, std::vector<Vec3>& out) {
  const std::int64_t ci = std::llround(p.x() / tol_), cj = std::llround(p.y() / tol_),
                     ck = std::llround(p.z() / tol_);
  for (int di = -1; di <= 1; ++di)
    for (int dj = -1; dj <= 1; ++dj)
      for (int dk = -1; dk <= 1; ++dk) {
        auto range = grid_.equal_range(key(ci + di, cj + dj, ck + dk));
        for (auto it = range.first; it != range.second; ++it)
          if ((out[it->second] - p).cwiseAbs().maxCoeff() <= tol_) return it->second;
      }
  int idx = static_cast<int>(out.size());
  out.push_back(p);
  grid_.emplace(key(ci, cj, ck), idx);
  return idx;
}

namespace {

void add_surface(const KochSurfaceSpec& spec, const Similitude& placement, int level, int component,
                 VertexWelder& welder, TriangleMesh& mesh, std::uint64_t budget) {
  for (const auto& m : level_maps(spec.ifs, level, budget)) {
    Similitude f = placement.after(m);
    std::array<int, 3> face;
    for (int a = 0; a < 3; ++a) face[a] = welder.insert(f.apply(spec.base_vertices[a]), mesh.vertices);
    if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2])
      throw DomainError("degenerate face after vertex welding");
    mesh.faces.push_back(face);
    mesh.face_component.push_back(component);
  }
}

}  // namespace

TriangleMesh prefractal_mesh(const KochSurfaceSpec& spec, int level, std::uint64_t face_budget) {
  checked_power(spec.ifs.size(), level, face_budget);
  TriangleMesh mesh;
  mesh.N = spec.N;
  mesh.level = level;
  mesh.component = "surface";
  VertexWelder welder;
  add_surface(spec, Similitude::identity(), level, 0, welder, mesh, face_budget);
  return mesh;
}

TriangleMesh prefractal_mesh(const CrystalSpec& spec, int level, std::uint64_t face_budget) {
  std::uint64_t per = checked_power(spec.surface.ifs.size(), level, face_budget);
  if (4 * per > face_budget) throw BudgetExceeded("face budget exceeded", 4 * per);
  TriangleMesh mesh;
  mesh.N = spec.N;
  mesh.level = level;
  mesh.component = "crystal";
  VertexWelder welder;
  for (int k = 0; k < 4; ++k) add_surface(spec.surface, spec.placements[k], level, k, welder, mesh, face_budget);
  return mesh;
}

void write_obj(const TriangleMesh& mesh, std::ostream& out) {
  char buf[128];
  out << "# K_" << mesh.N << ' ' << mesh.component << " level " << mesh.level << '\n';
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
    out << buf;
  }
  for (const auto& f : mesh.faces) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

}  // namespace

void write_ply(const TriangleMesh& mesh, std::ostream& out) {
  out << "ply\nformat binary_little_endian 1.0\n"
      << "comment K_" << mesh.N << ' ' << mesh.component << " level " << mesh.level << '\n'
      << "element vertex " << mesh.vertices.size() << '\n'
      << "property double x\nproperty double y\nproperty double z\n"
      << "element face " << mesh.faces.size() << '\n'
      << "property list uchar int vertex_indices\nend_header\n";
  for (const auto& v : mesh.vertices) {
    put_le(out, v.x());
    put_le(out, v.y());
    put_le(out, v.z());
  }
  for (const auto& f : mesh.faces) {
    put_le<unsigned char>(out, 3);
    for (int i : f) put_le<std::int32_t>(out, i);
  }
}

}  // namespace koch
