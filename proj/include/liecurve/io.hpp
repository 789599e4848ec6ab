#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "liecurve/helix.hpp"
#include "liecurve/mannheim.hpp"
#include "liecurve/synthesis.hpp"
#include "liecurve/verify.hpp"

namespace liecurve::io {

using json = nlohmann::ordered_json;

/// Locale-independent decimal formatting, 17 significant digits.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// Write-to-temp + atomic rename; a failed producer never leaves a partial
/// output file behind.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::error_code ec;
  if (!fs::exists(dir, ec))
    throw ParseError("output directory does not exist: " + dir.string());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out) {
      out.close();
      fs::remove(tmp, ec);
      throw ParseError("failed writing " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw ParseError("failed to move " + tmp.string() + " into place: " + ec.message());
  }
}

inline std::string line_anchored(const std::string& text, size_t byte) {
  size_t line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') { ++line; col = 1; }
    else ++col;
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(what + ": JSON parse error at " + line_anchored(text, e.byte) + ": " + e.what());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// Algebra definition files
// ---------------------------------------------------------------------------

/// { "name": ..., "orientation": +-1, "brackets": [ {"i":1,"j":2,"k":3,"value":2.0}, ... ] }
/// Omitted entries are zero; the loader fills c[j][i][k] = -value and rejects
/// contradictions between listed entries.
inline LieAlgebra3 algebra_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("algebra: expected an object");
  if (!j.contains("name") || !j["name"].is_string()) throw ParseError("algebra: missing string key 'name'");
  LieAlgebra3 g;
  g.name = j["name"].get<std::string>();
  if (!j.contains("orientation")) throw ParseError("algebra '" + g.name + "': missing key 'orientation'");
  g.orientation = j["orientation"].get<double>();

  bool set[3][3][3] = {};
  if (j.contains("brackets")) {
    if (!j["brackets"].is_array()) throw ParseError("algebra '" + g.name + "': 'brackets' must be an array");
    for (const auto& e : j["brackets"]) {
      for (const char* key : {"i", "j", "k", "value"})
        if (!e.contains(key))
          throw ParseError("algebra '" + g.name + "': bracket entry missing key '" + std::string(key) + "'");
      const int i = e["i"].get<int>(), jj = e["j"].get<int>(), k = e["k"].get<int>();
      const double v = e["value"].get<double>();
      if (i < 1 || i > 3 || jj < 1 || jj > 3 || k < 1 || k > 3)
        throw ParseError("algebra '" + g.name + "': bracket indices must be in 1..3");
      auto put = [&](int a, int b, int cidx, double val) {
        if (set[a][b][cidx] && g.c[a][b][cidx] != val)
          throw ParseError("algebra '" + g.name + "': contradictory entries for c[" + std::to_string(a + 1) +
                           "][" + std::to_string(b + 1) + "][" + std::to_string(cidx + 1) + "]: " +
                           format_double(g.c[a][b][cidx]) + " vs " + format_double(val));
        g.c[a][b][cidx] = val;
        set[a][b][cidx] = true;
      };
      put(i - 1, jj - 1, k - 1, v);
      put(jj - 1, i - 1, k - 1, -v);
    }
  }
  validate_algebra(g);
  return g;
}

inline json algebra_to_json(const LieAlgebra3& g) {
  json j;
  j["name"] = g.name;
  j["orientation"] = g.orientation;
  json arr = json::array();
  for (int i = 0; i < 3; ++i)
    for (int k = i + 1; k < 3; ++k)  // i < j suffices; antisymmetry restores the rest
      for (int l = 0; l < 3; ++l)
        if (g.c[i][k][l] != 0.0)
          arr.push_back({{"i", i + 1}, {"j", k + 1}, {"k", l + 1}, {"value", g.c[i][k][l]}});
  j["brackets"] = arr;
  return j;
}

/// Preset name or inline definition object.
inline LieAlgebra3 resolve_algebra(const json& j) {
  if (j.is_string()) {
    LieAlgebra3 g;
    if (!presets::lookup(j.get<std::string>(), g))
      throw ParseError("unknown algebra preset '" + j.get<std::string>() +
                       "'; available: abelian, su2, so3");
    return g;
  }
  return algebra_from_json(j);
}

// ---------------------------------------------------------------------------
// Curve files
// ---------------------------------------------------------------------------

/// { "algebra": name-or-object, "s": [...], "tangent": [[...],...],
///   "position": optional [[...],...], "provenance": optional object }
inline CurveSamples curve_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("curve: expected an object");
  for (const char* key : {"algebra", "s", "tangent"})
    if (!j.contains(key)) throw ParseError("curve: missing key '" + std::string(key) + "'");

  CurveSamples c;
  c.algebra = resolve_algebra(j["algebra"]);
  if (!j["s"].is_array()) throw ParseError("curve: 's' must be an array");
  c.s = j["s"].get<std::vector<double>>();
  if (!j["tangent"].is_array()) throw ParseError("curve: 'tangent' must be an array");
  for (const auto& t : j["tangent"]) {
    if (!t.is_array() || t.size() != 3) throw ParseError("curve: each 'tangent' entry must have 3 components");
    c.tangent.push_back({t[0].get<double>(), t[1].get<double>(), t[2].get<double>()});
  }
  if (c.tangent.size() != c.s.size())
    throw ParseError("curve: 's' and 'tangent' lengths differ (" + std::to_string(c.s.size()) + " vs " +
                     std::to_string(c.tangent.size()) + ")");

  if (j.contains("position") && !j["position"].is_null()) {
    const auto& parr = j["position"];
    if (!parr.is_array() || parr.size() != c.s.size())
      throw ParseError("curve: 'position' length must match 's'");
    if (!parr.empty()) {
      const size_t dim = parr[0].size();
      if (dim == 3) {
        c.realization = Realization::euclidean;
        for (const auto& p : parr) {
          if (p.size() != 3) throw ParseError("curve: mixed position dimensions");
          c.pos3.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
        }
      } else if (dim == 4) {
        c.realization = Realization::unit_quaternion;
        for (const auto& p : parr) {
          if (p.size() != 4) throw ParseError("curve: mixed position dimensions");
          c.posq.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>(), p[3].get<double>()});
        }
      } else {
        throw ParseError("curve: positions must be 3-vectors (euclidean) or 4-component unit quaternions");
      }
    }
  }
  return c;
}

inline json curve_to_json(const CurveSamples& c, std::optional<json> provenance = std::nullopt) {
  json j;
  const bool preset_name = c.algebra.name == "abelian" || c.algebra.name == "su2" || c.algebra.name == "so3";
  if (preset_name) j["algebra"] = c.algebra.name;
  else j["algebra"] = algebra_to_json(c.algebra);
  j["s"] = c.s;
  json tarr = json::array();
  for (const auto& t : c.tangent) tarr.push_back({t[0], t[1], t[2]});
  j["tangent"] = tarr;
  if (c.realization == Realization::euclidean) {
    json parr = json::array();
    for (const auto& p : c.pos3) parr.push_back({p[0], p[1], p[2]});
    j["position"] = parr;
  } else if (c.realization == Realization::unit_quaternion) {
    json parr = json::array();
    for (const auto& q : c.posq) parr.push_back({q.w, q.x, q.y, q.z});
    j["position"] = parr;
  }
  if (provenance) j["provenance"] = *provenance;
  return j;
}

inline CurveSamples load_curve(const std::filesystem::path& path) {
  return curve_from_json(parse_json(read_file(path), path.string()));
}

// ---------------------------------------------------------------------------
// CSV export
// ---------------------------------------------------------------------------

inline std::string frenet_to_csv(const FrenetData& fd, bool frames = false) {
  std::string out = "s,kappa,tau,tau_G,H,H_prime,sigma_N";
  if (frames) out += ",T1,T2,T3,N1,N2,N3,B1,B2,B3";
  out += "\n";
  for (size_t i = 0; i < fd.size(); ++i) {
    out += format_double(fd.s[i]) + "," + format_double(fd.kappa[i]) + "," + format_double(fd.tau[i]) +
           "," + format_double(fd.tau_G[i]) + "," + format_double(fd.H[i]) + "," +
           format_double(fd.H_prime[i]) + "," + format_double(fd.sigma_N[i]);
    if (frames)
      for (const auto* f : {&fd.T[i], &fd.N[i], &fd.B[i]})
        for (int k = 0; k < 3; ++k) out += "," + format_double((*f)[k]);
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline json mannheim_report_to_json(const MannheimReport& rep, bool tracks = true) {
  json j;
  j["lambda_hat"] = rep.lambda_hat;
  j["is_mannheim"] = rep.is_mannheim;
  j["max_residual"] = rep.max_residual;
  j["constancy_deviation"] = rep.constancy_deviation;
  j["tol_const"] = rep.tol_const;
  j["trimmed_intervals"] = json::array();
  if (tracks) j["tracks"] = {{"lambda", rep.lambda_track}, {"residual", rep.residual}};
  return j;
}

inline json partner_to_json(const PartnerData& pd, bool tracks = true) {
  json j;
  j["lambda"] = pd.lambda;
  j["s_range"] = {pd.s.front(), pd.s.back()};
  json trimmed = json::array();
  for (const auto& [a, b] : pd.trimmed) trimmed.push_back({a, b});
  j["trimmed_intervals"] = trimmed;
  if (tracks) {
    json t;
    t["s"] = pd.s;
    t["s_bar"] = pd.s_bar;
    t["arc_rate"] = pd.arc_rate;
    if (!pd.kappa_beta.empty()) {
      t["kappa_beta"] = pd.kappa_beta;
      t["tau_beta"] = pd.tau_beta;
      t["H_beta"] = pd.H_beta;
    }
    auto frame = [](const std::vector<Vec3>& v) {
      json a = json::array();
      for (const auto& x : v) a.push_back({x[0], x[1], x[2]});
      return a;
    };
    t["T_beta"] = frame(pd.T_beta);
    t["N_beta"] = frame(pd.N_beta);
    t["B_beta"] = frame(pd.B_beta);
    j["tracks"] = t;
  }
  return j;
}

inline json classification_to_json(const HelixClassification& c) {
  json j;
  j["kind"] = to_string(c.kind);
  j["witness"] = c.witness;
  if (c.kind == HelixKind::slant_helix) j["theta"] = c.theta;
  j["deviation"] = c.constancy_deviation;
  j["interval"] = {c.interval_begin, c.interval_end};
  return j;
}

inline json beta_side_to_json(const BetaSideReport& rep) {
  json j;
  j["mu"] = rep.mu;
  j["mu_fitted"] = rep.mu_fitted;
  j["mu_constancy_deviation"] = rep.mu_constancy_deviation;
  j["max_residual"] = rep.max_residual;
  j["scale"] = rep.scale;
  j["qualifies"] = rep.qualifies;
  j["note"] = rep.note;
  return j;
}

inline json verification_report_to_json(const verify::VerificationReport& rep) {
  json j;
  json env;
  env["h"] = rep.config.h;
  env["tol_const"] = rep.config.tol_const;
  env["seed"] = rep.config.seed;
  env["algebra_presets"] = presets::names();
  env["h_pair_cosh"] = rep.config.h_pair_cosh;
  env["h_pair_helix"] = rep.config.h_pair_helix;
  j["environment"] = env;

  json entries = json::array();
  for (const auto& e : rep.entries) {
    json je;
    je["id"] = e.id;
    je["status"] = e.status;
    je["max_residual"] = e.max_residual;
    je["tolerance"] = e.tolerance;
    je["notes"] = e.notes;
    entries.push_back(je);
  }
  j["entries"] = entries;

  json conv = json::array();
  for (const auto& c : rep.convergence) {
    json jc;
    jc["family"] = c.family;
    jc["h"] = c.h;
    jc["max_rel_error"] = c.max_rel_error;
    jc["ratio"] = c.ratio;
    conv.push_back(jc);
  }
  j["convergence"] = conv;
  // wall time intentionally left out: reports must be byte-identical for a
  // given config and seed
  j["all_passed"] = rep.all_passed();
  return j;
}

}  // namespace liecurve::io
