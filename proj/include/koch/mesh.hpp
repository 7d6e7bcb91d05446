#pragma once

#include "koch/crystal.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace koch {

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
  std::vector<int> face_component;  // surface index of each face (0 for a single surface)
  int N = 0;
  int level = 0;
  std::string component;  // "surface" or "crystal"
};

inline constexpr std::uint64_t kDefaultFaceBudget = 5'000'000;
inline constexpr double kWeldTolerance = 1e-9;

// Merges vertices closer than the tolerance; the first inserted copy is kept.
class VertexWelder {
 public:
  explicit VertexWelder(double tol = kWeldTolerance) : tol_(tol) {}
  int insert(const Vec3& p, std::vector<Vec3>& out);

 private:
  double tol_;
  std::unordered_multimap<std::int64_t, int> grid_;
  std::int64_t key(std::int64_t i, std::int64_t j, std::int64_t k) const;
};

TriangleMesh prefractal_mesh(const KochSurfaceSpec& spec, int level,
                             std::uint64_t face_budget = kDefaultFaceBudget);
TriangleMesh prefractal_mesh(const CrystalSpec& spec, int level,
                             std::uint64_t face_budget = kDefaultFaceBudget);

void write_obj(const TriangleMesh& mesh, std::ostream& out);
void write_ply(const TriangleMesh& mesh, std::ostream& out);

}  // namespace koch
