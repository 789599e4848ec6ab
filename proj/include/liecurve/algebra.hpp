#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "liecurve/errors.hpp"

namespace liecurve {

/// A vector in a 3-dimensional Lie algebra, expressed in the declared
/// orthonormal basis. The metric is the identity on that basis.
struct Vec3 {
  std::array<double, 3> v{0.0, 0.0, 0.0};

  Vec3() = default;
  Vec3(double a, double b, double c) : v{a, b, c} {}

  double& operator[](int i) { return v[static_cast<size_t>(i)]; }
  double operator[](int i) const { return v[static_cast<size_t>(i)]; }

  Vec3 operator+(const Vec3& o) const { return {v[0] + o.v[0], v[1] + o.v[1], v[2] + o.v[2]}; }
  Vec3 operator-(const Vec3& o) const { return {v[0] - o.v[0], v[1] - o.v[1], v[2] - o.v[2]}; }
  Vec3 operator-() const { return {-v[0], -v[1], -v[2]}; }
  Vec3& operator+=(const Vec3& o) {
    v[0] += o.v[0]; v[1] += o.v[1]; v[2] += o.v[2];
    return *this;
  }
};

inline Vec3 operator*(double a, const Vec3& x) { return {a * x[0], a * x[1], a * x[2]}; }
inline Vec3 operator*(const Vec3& x, double a) { return a * x; }
inline Vec3 operator/(const Vec3& x, double a) { return {x[0] / a, x[1] / a, x[2] / a}; }

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) { return a / norm(a); }

/// Cross product of the right-handed coordinate basis.
inline Vec3 cross_std(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// Metric cross product in the oriented orthonormal basis: for orientation -1
/// the basis is left-handed and the induced cross product flips sign.
inline Vec3 cross(const Vec3& a, const Vec3& b, double orientation) {
  return orientation * cross_std(a, b);
}

struct BracketViolation {
  int i, j, k;      // 1-based indices of the offending triple
  double value;     // c[i][j][k]
  double expected;  // what total antisymmetry demands
  std::string rule; // which symmetry was violated
};

struct BiInvarianceReport {
  bool ok = true;
  std::vector<BracketViolation> violations;
};

/// A 3-dimensional Lie algebra given by structure constants in an
/// orthonormal basis: [e_i, e_j] = sum_k c[i][j][k] e_k.
class LieAlgebra3 {
 public:
  std::string name;
  double orientation = 1.0;  // handedness of the basis, +1 or -1
  double c[3][3][3] = {};

  LieAlgebra3() = default;
  LieAlgebra3(std::string n, double orient) : name(std::move(n)), orientation(orient) {}

  /// [X, Y] expanded through the structure constants. Bilinear, antisymmetric.
  Vec3 bracket(const Vec3& x, const Vec3& y) const {
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
      const double xi = x[i];
      if (xi == 0.0) continue;
      for (int j = 0; j < 3; ++j) {
        const double w = xi * y[j];
        if (w == 0.0) continue;
        for (int k = 0; k < 3; ++k) out[k] += w * c[i][j][k];
      }
    }
    return out;
  }

  bool is_abelian() const {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          if (c[i][j][k] != 0.0) return false;
    return true;
  }
};

/// Total antisymmetry of <[e_i,e_j],e_k> = c[i][j][k], which for the identity
/// metric is exactly bi-invariance. tol = 0 compares the stored constants
/// exactly; user-supplied algebras are checked with tol = 1e-12.
inline BiInvarianceReport check_bi_invariance(const LieAlgebra3& g, double tol = 0.0) {
  BiInvarianceReport rep;
  auto close = [tol](double a, double b) {
    return std::abs(a - b) <= tol * (1.0 + std::abs(a) + std::abs(b));
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const double v = g.c[i][j][k];
        if (!close(v, -g.c[j][i][k]))
          rep.violations.push_back({i + 1, j + 1, k + 1, v, -g.c[j][i][k], "c[i][j][k] = -c[j][i][k]"});
        if (!close(v, -g.c[i][k][j]))
          rep.violations.push_back({i + 1, j + 1, k + 1, v, -g.c[i][k][j], "c[i][j][k] = -c[i][k][j]"});
      }
  rep.ok = rep.violations.empty();
  return rep;
}

/// Componentwise Jacobi identity on the basis triples.
inline bool check_jacobi(const LieAlgebra3& g, double tol = 1e-12) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          double sum = 0.0;
          for (int m = 0; m < 3; ++m)
            sum += g.c[j][k][m] * g.c[i][m][l] + g.c[k][i][m] * g.c[j][m][l] +
                   g.c[i][j][m] * g.c[k][m][l];
          if (std::abs(sum) > tol) return false;
        }
  return true;
}

inline void validate_algebra(const LieAlgebra3& g, double tol = 1e-12) {
  if (g.orientation != 1.0 && g.orientation != -1.0)
    throw ParseError("algebra '" + g.name + "': orientation must be +1 or -1");
  const auto bi = check_bi_invariance(g, tol);
  if (!bi.ok) {
    const auto& v = bi.violations.front();
    throw ParseError("algebra '" + g.name + "': structure constants not totally antisymmetric at (" +
                     std::to_string(v.i) + "," + std::to_string(v.j) + "," + std::to_string(v.k) + ")");
  }
  if (!check_jacobi(g, tol))
    throw ParseError("algebra '" + g.name + "': Jacobi identity fails");
}

namespace presets {

/// All brackets vanish.
inline LieAlgebra3 abelian() { return LieAlgebra3("abelian", 1.0); }

/// [e_i, e_j] = s * eps_ijk e_k
inline LieAlgebra3 scaled_epsilon(std::string name, double s) {
  LieAlgebra3 g(std::move(name), 1.0);
  g.c[0][1][2] = s;  g.c[1][0][2] = -s;
  g.c[1][2][0] = s;  g.c[2][1][0] = -s;
  g.c[2][0][1] = s;  g.c[0][2][1] = -s;
  return g;
}

/// Quaternion units: bracket scale 2.
inline LieAlgebra3 su2() { return scaled_epsilon("su2", 2.0); }

/// Rotation generators: bracket scale 1.
inline LieAlgebra3 so3() { return scaled_epsilon("so3", 1.0); }

inline std::vector<std::string> names() { return {"abelian", "su2", "so3"}; }

inline bool lookup(const std::string& name, LieAlgebra3& out) {
  if (name == "abelian") { out = abelian(); return true; }
  if (name == "su2") { out = su2(); return true; }
  if (name == "so3") { out = so3(); return true; }
  return false;
}

}  // namespace presets

}  // namespace liecurve
