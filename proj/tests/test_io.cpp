#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "liecurve/io.hpp"

#include "test_util.hpp"

using namespace liecurve;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const auto dir = fs::temp_directory_path() / "liecurve_io_tests";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("doubles format with 17 significant digits and round-trip exactly") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 200; ++k) {
    const double x = (test_util::uniform01(rng) - 0.5) * std::pow(10.0, test_util::uniform(rng, -8, 8));
    const std::string s = io::format_double(x);
    CHECK(s.find(',') == std::string::npos);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
}

TEST_CASE("algebra JSON loader symmetrizes and validates") {
  const auto j = io::parse_json(R"({
    "name": "su2_clone", "orientation": 1,
    "brackets": [
      {"i": 1, "j": 2, "k": 3, "value": 2.0},
      {"i": 2, "j": 3, "k": 1, "value": 2.0},
      {"i": 3, "j": 1, "k": 2, "value": 2.0}
    ]})", "inline");
  const auto g = io::algebra_from_json(j);
  const auto su2 = presets::su2();
  std::mt19937_64 rng(22);
  for (int k = 0; k < 20; ++k) {
    const Vec3 x = test_util::random_vec(rng), y = test_util::random_vec(rng);
    CHECK(norm(g.bracket(x, y) - su2.bracket(x, y)) < 1e-14);
  }
}

TEST_CASE("algebra JSON loader rejects contradictions and bad indices") {
  CHECK_THROWS_AS(io::algebra_from_json(io::parse_json(R"({
    "name": "bad", "orientation": 1,
    "brackets": [
      {"i": 1, "j": 2, "k": 3, "value": 2.0},
      {"i": 2, "j": 1, "k": 3, "value": 2.0}
    ]})", "inline")), ParseError);
  CHECK_THROWS_AS(io::algebra_from_json(io::parse_json(R"({
    "name": "bad", "orientation": 1,
    "brackets": [{"i": 0, "j": 2, "k": 3, "value": 1.0}]})", "inline")), ParseError);
  CHECK_THROWS_AS(io::algebra_from_json(io::parse_json(R"({
    "name": "bad", "orientation": 1,
    "brackets": [{"i": 1, "j": 2, "value": 1.0}]})", "inline")), ParseError);
  // non-bi-invariant: [e1,e2] = e1 fails total antisymmetry
  CHECK_THROWS_AS(io::algebra_from_json(io::parse_json(R"({
    "name": "bad", "orientation": 1,
    "brackets": [{"i": 1, "j": 2, "k": 1, "value": 1.0}]})", "inline")), ParseError);
}

TEST_CASE("algebra JSON round trip preserves the bracket") {
  for (const auto& g : {presets::su2(), presets::so3()}) {
    const auto g2 = io::algebra_from_json(io::algebra_to_json(g));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) CHECK(g2.c[i][j][k] == g.c[i][j][k]);
  }
}

TEST_CASE("curve JSON round trip is exact") {
  const auto c = test_util::helix_samples(3.0, 4.0, 0.0, 1.0, 33);
  const auto j = io::curve_to_json(c);
  const auto c2 = io::curve_from_json(j);
  REQUIRE(c2.size() == c.size());
  CHECK(c2.algebra.name == "abelian");
  CHECK(c2.realization == Realization::euclidean);
  for (size_t i = 0; i < c.size(); ++i) {
    CHECK(c2.s[i] == c.s[i]);
    CHECK(norm(c2.tangent[i] - c.tangent[i]) == 0.0);
    CHECK(norm(c2.pos3[i] - c.pos3[i]) == 0.0);
  }
}

TEST_CASE("curve JSON validation names the offending key") {
  auto check_message = [](const std::string& text, const std::string& needle) {
    try {
      io::curve_from_json(io::parse_json(text, "inline"));
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  check_message(R"({"s": [0, 1]})", "algebra");
  check_message(R"({"algebra": "abelian", "tangent": []})", "s");
  check_message(R"({"algebra": "abelian", "s": [0, 1]})", "tangent");
  check_message(R"({"algebra": "nope", "s": [0], "tangent": [[1, 0, 0]]})", "nope");
  check_message(R"({"algebra": "abelian", "s": [0, 1], "tangent": [[1, 0, 0]]})", "lengths differ");
  check_message(R"({"algebra": "abelian", "s": [0], "tangent": [[1, 0]]})", "3 components");
  check_message(R"({"algebra": "abelian", "s": [0], "tangent": [[1, 0, 0]], "position": [[1, 0]]})",
                "position");
}

TEST_CASE("JSON parse errors carry line anchors") {
  try {
    io::parse_json("{\n  \"a\": 1,\n  bad\n}", "inline");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("quaternion curves round trip through JSON") {
  CurveSamples c;
  c.algebra = presets::su2();
  c.realization = Realization::unit_quaternion;
  c.s = test_util::uniform_grid(0.0, 1.0, 9);
  const Vec3 u = normalized(Vec3{1, 2, 0});
  for (const double s : c.s) {
    c.tangent.push_back(u);
    c.posq.push_back(quat_exp(s * u));
  }
  const auto c2 = io::curve_from_json(io::curve_to_json(c));
  REQUIRE(c2.realization == Realization::unit_quaternion);
  for (size_t i = 0; i < c.size(); ++i) {
    CHECK(c2.posq[i].w == c.posq[i].w);
    CHECK(c2.posq[i].x == c.posq[i].x);
  }
}

TEST_CASE("frenet CSV has the documented columns") {
  const auto c = test_util::helix_samples(3.0, 4.0, 0.0, 1.0, 64);
  const auto fd = frenet_apparatus(c);
  const auto csv = io::frenet_to_csv(fd);
  CHECK(csv.rfind("s,kappa,tau,tau_G,H,H_prime,sigma_N\n", 0) == 0);
  const auto with_frames = io::frenet_to_csv(fd, true);
  CHECK(with_frames.rfind("s,kappa,tau,tau_G,H,H_prime,sigma_N,T1,T2,T3,N1,N2,N3,B1,B2,B3\n", 0) == 0);
  // one line per sample plus header
  size_t lines = 0;
  for (const char ch : csv)
    if (ch == '\n') ++lines;
  CHECK(lines == fd.size() + 1);
}

TEST_CASE("atomic_write never leaves partial outputs") {
  const auto dir = temp_dir();
  const auto target = dir / "report.json";
  io::atomic_write(target, "{\"ok\": true}\n");
  CHECK(fs::exists(target));
  CHECK_FALSE(fs::exists(dir / "report.json.tmp"));

  const auto missing = dir / "no_such_subdir" / "report.json";
  CHECK_THROWS_AS(io::atomic_write(missing, "x"), ParseError);
  CHECK_FALSE(fs::exists(missing));
}

TEST_CASE("report serializers expose the documented keys") {
  const auto fd = test_util::cosh_family_tracks(presets::abelian(), 0.5, 2.5, 101);
  const auto rep = mannheim_check(fd);
  const auto j = io::mannheim_report_to_json(rep);
  for (const char* key : {"lambda_hat", "is_mannheim", "max_residual", "trimmed_intervals", "tracks"})
    CHECK(j.contains(key));

  auto pd = partner_frame(fd, 0.5);
  partner_curvatures(pd, fd);
  const auto jp = io::partner_to_json(pd);
  CHECK(jp.contains("lambda"));
  CHECK(jp.contains("trimmed_intervals"));
  CHECK(jp["tracks"].contains("H_beta"));

  const auto jc = io::classification_to_json(classify(fd));
  for (const char* key : {"kind", "witness", "deviation", "interval"}) CHECK(jc.contains(key));
  CHECK(jc["kind"] == "slant_helix");
}
