#pragma once

#include "koch/ifs.hpp"

#include <array>
#include <vector>

namespace koch::geom {

double max_pairwise_distance(const std::vector<Vec3>& pts);
double max_cross_distance(const std::vector<Vec3>& a, const std::vector<Vec3>& b);

// Separating-axis test for two convex polytopes with the same face topology
// (images of one enclosure). Returns the largest separation gap found over face
// normals and edge cross products; <= 0 means the closed polytopes overlap or touch.
double separation_gap(const std::vector<Vec3>& a, const std::vector<Vec3>& b,
                      const ConvexPolytope& topology);

struct Hull {
  std::vector<Vec3> points;                // input points
  std::vector<std::array<int, 3>> faces;   // outward oriented triangles
  std::vector<int> vertices;               // indices of points used by faces
  double volume() const;
  // Hull vertices where the incident face planes span three directions.
  std::vector<int> corner_vertices(double angle_tol = 1e-9) const;
};

// Incremental 3D convex hull. Throws DomainError for (near) coplanar input.
Hull convex_hull(const std::vector<Vec3>& pts, double eps = 1e-12);

// Static k-d tree for nearest-neighbour distance queries.
class KdTree {
 public:
  explicit KdTree(std::vector<Vec3> pts);
  double nearest_distance(const Vec3& q) const;
  bool has_point_within(const Vec3& q, double r) const { return any_within(root_, q, r * r); }

 private:
  struct Node {
    int point;
    int axis;
    int left = -1, right = -1;
  };
  int build(std::vector<int>& idx, int lo, int hi, int depth);
  void search(int node, const Vec3& q, double& best2) const;
  bool any_within(int node, const Vec3& q, double r2) const;
  std::vector<Vec3> pts_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

// sup_{a in A} inf_{b in B} |a - b| over finite sets.
double directed_hausdorff(const std::vector<Vec3>& a, const KdTree& b);

}  // namespace koch::geom
