#include <catch2/catch_amalgamated.hpp>

#include "liecurve/algebra.hpp"

#include "test_util.hpp"

using namespace liecurve;
using test_util::random_vec;

TEST_CASE("bracket vanishes identically in the abelian algebra") {
  const auto g = presets::abelian();
  std::mt19937_64 rng(7);
  for (int k = 0; k < 20; ++k) {
    const Vec3 x = random_vec(rng, 5.0), y = random_vec(rng, 5.0);
    CHECK(norm(g.bracket(x, y)) == 0.0);
  }
}

TEST_CASE("bracket(X, X) = 0 in every preset") {
  std::mt19937_64 rng(8);
  for (const auto& g : {presets::abelian(), presets::su2(), presets::so3()}) {
    for (int k = 0; k < 20; ++k) {
      const Vec3 x = random_vec(rng, 3.0);
      CHECK(norm(g.bracket(x, x)) == 0.0);
    }
  }
}

TEST_CASE("su2 structure constants: [e1, e2] = 2 e3") {
  const auto g = presets::su2();
  const Vec3 b = g.bracket({1, 0, 0}, {0, 1, 0});
  CHECK(b[0] == 0.0);
  CHECK(b[1] == 0.0);
  CHECK(b[2] == 2.0);
}

TEST_CASE("bracket is bilinear") {
  std::mt19937_64 rng(9);
  for (const auto& g : {presets::su2(), presets::so3()}) {
    for (int k = 0; k < 10; ++k) {
      const Vec3 x = random_vec(rng), y = random_vec(rng), z = random_vec(rng);
      const double a = test_util::uniform(rng, -2, 2), b = test_util::uniform(rng, -2, 2);
      const Vec3 lhs = g.bracket(a * x + b * y, z);
      const Vec3 rhs = a * g.bracket(x, z) + b * g.bracket(y, z);
      CHECK(norm(lhs - rhs) < 1e-14);
    }
  }
}

TEST_CASE("presets satisfy the Jacobi identity and bi-invariance") {
  for (const auto& g : {presets::abelian(), presets::su2(), presets::so3()}) {
    CHECK(check_jacobi(g));
    CHECK(check_bi_invariance(g).ok);
  }
}

TEST_CASE("ad-invariance: <[X,Y],Z> + <Y,[X,Z]> = 0 on randomized triples") {
  std::mt19937_64 rng(10);
  for (const auto& g : {presets::abelian(), presets::su2(), presets::so3()}) {
    for (int k = 0; k < 50; ++k) {
      const Vec3 x = random_vec(rng, 2.0), y = random_vec(rng, 2.0), z = random_vec(rng, 2.0);
      const double lhs = dot(g.bracket(x, y), z) + dot(y, g.bracket(x, z));
      const double scale = 1.0 + std::abs(dot(g.bracket(x, y), z));
      CHECK(std::abs(lhs) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("tampered structure constants are reported with the offending triples") {
  LieAlgebra3 g("tampered", 1.0);
  g.c[0][1][2] = 2.0;  // c[1][2][3] = 2 with no antisymmetric mirror
  g.c[1][2][0] = 1.0;  // c[2][3][1] = 1
  const auto rep = check_bi_invariance(g);
  REQUIRE_FALSE(rep.ok);
  bool saw_123 = false, saw_231 = false;
  for (const auto& v : rep.violations) {
    if (v.i == 1 && v.j == 2 && v.k == 3) saw_123 = true;
    if (v.i == 2 && v.j == 3 && v.k == 1) saw_231 = true;
  }
  CHECK(saw_123);
  CHECK(saw_231);
}

TEST_CASE("cross product: handedness, antisymmetry, degenerate input") {
  const Vec3 e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};
  CHECK(norm(cross(e1, e2, +1.0) - e3) == 0.0);
  CHECK(norm(cross(e2, e1, +1.0) + e3) == 0.0);
  CHECK(norm(cross(e1, e2, -1.0) + e3) == 0.0);
  CHECK(norm(cross(e1, e1, +1.0)) == 0.0);
}

TEST_CASE("cross product satisfies the metric identities") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 50; ++k) {
    const Vec3 x = random_vec(rng, 3.0), y = random_vec(rng, 3.0);
    const Vec3 c = cross(x, y, +1.0);
    CHECK(std::abs(dot(c, x)) < 1e-12 * (1.0 + norm(x) * norm(y)));
    CHECK(std::abs(dot(c, y)) < 1e-12 * (1.0 + norm(x) * norm(y)));
    const double lhs = dot(c, c);
    const double rhs = dot(x, x) * dot(y, y) - dot(x, y) * dot(x, y);
    CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("validate_algebra rejects a broken orientation and bad tensors") {
  LieAlgebra3 g("bad", 0.5);
  CHECK_THROWS_AS(validate_algebra(g), ParseError);
  LieAlgebra3 g2("bad2", 1.0);
  g2.c[0][1][2] = 1.0;  // not antisymmetrized
  CHECK_THROWS_AS(validate_algebra(g2), ParseError);
}
