#pragma once

#include <algorithm>
#include <cmath>

#include "liecurve/algebra.hpp"

namespace liecurve {

/// Unit quaternion q = w + x i + y j + z k. The bi-invariant metric is
/// normalized so that {i, j, k} is an orthonormal basis of the algebra of
/// imaginary quaternions; geodesics through the identity are
/// s -> (cos s, sin s * u) for a unit imaginary u.
struct Quat {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  Quat() = default;
  Quat(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  static Quat identity() { return {}; }
  static Quat pure(const Vec3& v) { return {0.0, v[0], v[1], v[2]}; }

  Vec3 imag() const { return {x, y, z}; }
  Quat conjugate() const { return {w, -x, -y, -z}; }

  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
  Quat normalized() const {
    const double n = norm();
    return {w / n, x / n, y / n, z / n};
  }
};

inline Quat operator*(const Quat& a, const Quat& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline Quat operator+(const Quat& a, const Quat& b) {
  return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}

inline Quat operator*(double s, const Quat& q) { return {s * q.w, s * q.x, s * q.y, s * q.z}; }

inline double dot4(const Quat& a, const Quat& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

/// exp of an algebra vector: exp(v) = (cos|v|, sin|v| v/|v|).
inline Quat quat_exp(const Vec3& v) {
  const double t = norm(v);
  if (t < 1e-300) return {1.0, v[0], v[1], v[2]};
  const double s = std::sin(t) / t;
  return {std::cos(t), s * v[0], s * v[1], s * v[2]};
}

/// Principal logarithm of a unit quaternion as an algebra vector.
inline Vec3 quat_log(const Quat& q) {
  const Vec3 im = q.imag();
  const double n = norm(im);
  const double theta = std::atan2(n, q.w);
  if (n < 1e-300) return {0.0, 0.0, 0.0};
  return (theta / n) * im;
}

/// Geodesic distance on the group of unit quaternions under the metric
/// normalization above: the angle between q1 and q2 on the 3-sphere.
inline double geodesic_distance(const Quat& q1, const Quat& q2) {
  const double c = std::clamp(dot4(q1, q2), -1.0, 1.0);
  return std::acos(c);
}

}  // namespace liecurve
