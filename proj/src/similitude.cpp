#include "koch/similitude.hpp"

#include <cmath>

namespace koch {

Similitude Similitude::from_parts(const Mat3& linear, const Vec3& translation) {
  Similitude s;
  s.linear = linear;
  s.translation = translation;
  s.ratio = std::cbrt(std::abs(linear.determinant()));
  if (!(s.ratio > 0.0)) throw DomainError("similitude with singular linear part");
  if (s.orthogonality_defect() > 1e-10)
    throw DomainError("linear part is not a scaled orthogonal matrix");
  return s;
}

Similitude Similitude::homothety(const Vec3& center, double ratio) {
  Similitude s;
  s.linear = ratio * Mat3::Identity();
  s.translation = center - ratio * center;
  s.ratio = ratio;
  return s;
}

Similitude Similitude::after(const Similitude& other) const {
  Similitude s;
  s.linear = linear * other.linear;
  s.translation = linear * other.translation + translation;
  s.ratio = ratio * other.ratio;
  return s;
}

Similitude Similitude::inverse() const {
  Similitude s;
  // linear = r g, inverse = g^T / r
  s.linear = linear.transpose() / (ratio * ratio);
  s.translation = -(s.linear * translation);
  s.ratio = 1.0 / ratio;
  return s;
}

double Similitude::orthogonality_defect() const {
  Mat3 g = linear / ratio;
  return (g.transpose() * g - Mat3::Identity()).cwiseAbs().maxCoeff();
}

Vec3 apply(const Similitude& s, const Vec3& x) { return s.apply(x); }

Similitude similitude_from_triangle(const Vec3 src[3], const Vec3 dst[3], double ratio) {
  Vec3 u = src[1] - src[0], v = src[2] - src[0];
  Vec3 up = dst[1] - dst[0], vp = dst[2] - dst[0];
  Mat3 a, b;
  a << u, v, u.cross(v);
  // |up x vp| = ratio^2 |u x v|, so dividing by ratio gives the scaled normal.
  b << up, vp, up.cross(vp) / ratio;
  Similitude s;
  s.linear = b * a.inverse();
  s.translation = dst[0] - s.linear * src[0];
  s.ratio = ratio;
  if (s.orthogonality_defect() > 1e-10)
    throw DomainError("triangle correspondence is not a similarity of the stated ratio");
  return s;
}

double max_abs_difference(const Similitude& a, const Similitude& b) {
  return std::max((a.linear - b.linear).cwiseAbs().maxCoeff(),
                  (a.translation - b.translation).cwiseAbs().maxCoeff());
}

}  // namespace koch
