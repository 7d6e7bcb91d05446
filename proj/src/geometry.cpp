#include "koch/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace koch::geom {

double max_pairwise_distance(const std::vector<Vec3>& pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      best = std::max(best, (pts[i] - pts[j]).norm());
  return best;
}

double max_cross_distance(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  double best = 0.0;
  for (const auto& p : a)
    for (const auto& q : b) best = std::max(best, (p - q).norm());
  return best;
}

namespace {

void project(const std::vector<Vec3>& pts, const Vec3& axis, double& lo, double& hi) {
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (const auto& p : pts) {
    double t = p.dot(axis);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
}

double axis_gap(const std::vector<Vec3>& a, const std::vector<Vec3>& b, Vec3 axis) {
  double n = axis.norm();
  if (n < 1e-14) return -std::numeric_limits<double>::infinity();
  axis /= n;
  double alo, ahi, blo, bhi;
  project(a, axis, alo, ahi);
  project(b, axis, blo, bhi);
  return std::max(blo - ahi, alo - bhi);
}

}  // namespace

double separation_gap(const std::vector<Vec3>& a, const std::vector<Vec3>& b,
                      const ConvexPolytope& topology) {
  double best = -std::numeric_limits<double>::infinity();
  const auto edges = topology.edges();
  for (const auto* poly : {&a, &b}) {
    for (const auto& f : topology.faces) {
      const auto& p = *poly;
      Vec3 nrm = (p[f[1]] - p[f[0]]).cross(p[f[2]] - p[f[0]]);
      best = std::max(best, axis_gap(a, b, nrm));
    }
  }
  for (const auto& ea : edges) {
    Vec3 da = a[ea.second] - a[ea.first];
    for (const auto& eb : edges) {
      Vec3 db = b[eb.second] - b[eb.first];
      best = std::max(best, axis_gap(a, b, da.cross(db)));
    }
  }
  return best;
}

double Hull::volume() const {
  Vec3 c = Vec3::Zero();
  for (int v : vertices) c += points[v];
  c /= static_cast<double>(vertices.size());
  double vol = 0.0;
  for (const auto& f : faces)
    vol += (points[f[0]] - c).dot((points[f[1]] - c).cross(points[f[2]] - c)) / 6.0;
  return vol;
}

std::vector<int> Hull::corner_vertices(double angle_tol) const {
  std::map<int, std::vector<Vec3>> normals;
  for (const auto& f : faces) {
    Vec3 n = (points[f[1]] - points[f[0]]).cross(points[f[2]] - points[f[0]]).normalized();
    for (int v : f) normals[v].push_back(n);
  }
  std::vector<int> corners;
  for (auto& [v, ns] : normals) {
    // distinct planes
    std::vector<Vec3> uniq;
    for (const auto& n : ns) {
      bool seen = false;
      for (const auto& u : uniq)
        if ((u - n).norm() < angle_tol * 1e3) seen = true;
      if (!seen) uniq.push_back(n);
    }
    bool spans = false;
    for (std::size_t i = 0; i < uniq.size() && !spans; ++i)
      for (std::size_t j = i + 1; j < uniq.size() && !spans; ++j)
        for (std::size_t k = j + 1; k < uniq.size() && !spans; ++k)
          if (std::abs(uniq[i].dot(uniq[j].cross(uniq[k]))) > 1e-6) spans = true;
    if (spans) corners.push_back(v);
  }
  return corners;
}

Hull convex_hull(const std::vector<Vec3>& pts, double eps) {
  const int n = static_cast<int>(pts.size());
  if (n < 4) throw DomainError("convex hull needs at least 4 points");
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double tol = eps * std::max(scale, 1.0);

  // initial tetrahedron from extreme points
  int i0 = 0, i1 = -1, i2 = -1, i3 = -1;
  for (int i = 1; i < n; ++i)
    if (pts[i].x() < pts[i0].x()) i0 = i;
  double best = 0;
  for (int i = 0; i < n; ++i)
    if (double d = (pts[i] - pts[i0]).norm(); d > best) best = d, i1 = i;
  best = 0;
  for (int i = 0; i < n; ++i)
    if (double d = (pts[i] - pts[i0]).cross(pts[i1] - pts[i0]).norm(); d > best) best = d, i2 = i;
  best = 0;
  Vec3 nrm = (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]);
  for (int i = 0; i < n; ++i)
    if (double d = std::abs((pts[i] - pts[i0]).dot(nrm)); d > best) best = d, i3 = i;
  if (i1 < 0 || i2 < 0 || i3 < 0 || best < tol * nrm.norm())
    throw DomainError("convex hull of degenerate (coplanar) point set");

  struct Face {
    std::array<int, 3> v;
    Vec3 n;
    double off;
    bool alive = true;
  };
  std::vector<Face> faces;
  Vec3 inside = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
  auto add_face = [&](int a, int b, int c) {
    Vec3 fn = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
    if (fn.dot(pts[a] - inside) < 0) {
      std::swap(b, c);
      fn = -fn;
    }
    fn.normalize();
    faces.push_back({{a, b, c}, fn, fn.dot(pts[a])});
  };
  add_face(i0, i1, i2);
  add_face(i0, i1, i3);
  add_face(i0, i2, i3);
  add_face(i1, i2, i3);

  // process remaining points, farthest from the inside point first
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return (pts[a] - inside).squaredNorm() > (pts[b] - inside).squaredNorm();
  });
  for (int p : order) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    std::vector<int> visible;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f)
      if (faces[f].alive && faces[f].n.dot(pts[p]) - faces[f].off > tol) visible.push_back(f);
    if (visible.empty()) continue;
    std::map<std::pair<int, int>, int> edge_count;
    for (int f : visible) {
      faces[f].alive = false;
      for (int e = 0; e < 3; ++e) edge_count[{faces[f].v[e], faces[f].v[(e + 1) % 3]}]++;
    }
    for (auto& [e, cnt] : edge_count) {
      if (edge_count.count({e.second, e.first})) continue;  // interior edge of visible region
      Vec3 fn = (pts[e.second] - pts[e.first]).cross(pts[p] - pts[e.first]);
      double len = fn.norm();
      if (len < 1e-300) continue;
      fn /= len;
      faces.push_back({{e.first, e.second, p}, fn, fn.dot(pts[p])});
    }
  }

  Hull h;
  h.points = pts;
  std::vector<char> used(n, 0);
  for (const auto& f : faces) {
    if (!f.alive) continue;
    h.faces.push_back(f.v);
    for (int v : f.v) used[v] = 1;
  }
  for (int i = 0; i < n; ++i)
    if (used[i]) h.vertices.push_back(i);
  return h;
}

KdTree::KdTree(std::vector<Vec3> pts) : pts_(std::move(pts)) {
  std::vector<int> idx(pts_.size());
  std::iota(idx.begin(), idx.end(), 0);
  nodes_.reserve(pts_.size());
  root_ = build(idx, 0, static_cast<int>(idx.size()), 0);
}

int KdTree::build(std::vector<int>& idx, int lo, int hi, int depth) {
  if (lo >= hi) return -1;
  int axis = depth % 3;
  int mid = (lo + hi) / 2;
  std::nth_element(idx.begin() + lo, idx.begin() + mid, idx.begin() + hi,
                   [&](int a, int b) { return pts_[a][axis] < pts_[b][axis]; });
  int node = static_cast<int>(nodes_.size());
  nodes_.push_back({idx[mid], axis});
  int l = build(idx, lo, mid, depth + 1);
  int r = build(idx, mid + 1, hi, depth + 1);
  nodes_[node].left = l;
  nodes_[node].right = r;
  return node;
}

void KdTree::search(int node, const Vec3& q, double& best2) const {
  if (node < 0) return;
  const Node& nd = nodes_[node];
  const Vec3& p = pts_[nd.point];
  best2 = std::min(best2, (p - q).squaredNorm());
  double diff = q[nd.axis] - p[nd.axis];
  int near = diff < 0 ? nd.left : nd.right;
  int far = diff < 0 ? nd.right : nd.left;
  search(near, q, best2);
  if (diff * diff < best2) search(far, q, best2);
}

double KdTree::nearest_distance(const Vec3& q) const {
  double best2 = std::numeric_limits<double>::infinity();
  search(root_, q, best2);
  return std::sqrt(best2);
}

bool KdTree::any_within(int node, const Vec3& q, double r2) const {
  if (node < 0) return false;
  const Node& nd = nodes_[node];
  const Vec3& p = pts_[nd.point];
  if ((p - q).squaredNorm() <= r2) return true;
  double diff = q[nd.axis] - p[nd.axis];
  int near = diff < 0 ? nd.left : nd.right;
  int far = diff < 0 ? nd.right : nd.left;
  if (any_within(near, q, r2)) return true;
  return diff * diff <= r2 && any_within(far, q, r2);
}

double directed_hausdorff(const std::vector<Vec3>& a, const KdTree& b) {
  // points already within the running maximum cannot raise it
  double worst = 0.0;
  for (const auto& p : a) {
    if (b.has_point_within(p, worst)) continue;
    worst = std::max(worst, b.nearest_distance(p));
  }
  return worst;
}

}  // namespace koch::geom
