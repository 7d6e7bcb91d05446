#pragma once

#include "koch/core.hpp"

namespace koch {

// S(x) = linear * x + translation, with linear = ratio * g and g orthogonal.
struct Similitude {
  Mat3 linear = Mat3::Identity();
  Vec3 translation = Vec3::Zero();
  double ratio = 1.0;

  static Similitude identity() { return {}; }
  static Similitude from_parts(const Mat3& linear, const Vec3& translation);
  // Homothety with the given center: x -> center + ratio * (x - center).
  static Similitude homothety(const Vec3& center, double ratio);

  Vec3 apply(const Vec3& x) const { return linear * x + translation; }
  Vec3 operator()(const Vec3& x) const { return apply(x); }

  // (this o other)(x) = this(other(x))
  Similitude after(const Similitude& other) const;
  Similitude inverse() const;

  // Largest deviation of g^T g from the identity.
  double orthogonality_defect() const;
};

Vec3 apply(const Similitude& s, const Vec3& x);

// Linear part recovered from three point correspondences src[i] -> dst[i] plus the
// orientation-preserving normal direction; ratio must match the edge scaling.
Similitude similitude_from_triangle(const Vec3 src[3], const Vec3 dst[3], double ratio);

double max_abs_difference(const Similitude& a, const Similitude& b);

}  // namespace koch
