// liecurve: Frenet geometry, Mannheim partners, and helix classification for
// sampled curves in 3-D Lie groups with bi-invariant metrics.
//
// Exit codes:
//   0  success
//   1  unexpected internal error
//   2  file / parse / validation error
//   3  vanishing curvature (Frenet frame undefined)
//   4  harmonic curvature vanishes (partner parametrization degenerates)
//   5  domain precondition violated (generator ranges, mu = 0, ...)
//   6  verification suite reported failures

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "liecurve/io.hpp"

namespace lc = liecurve;
using lc::io::json;

namespace {

struct CommonConfig {
  double h = 1e-3;
  double tol_const = 1e-4;
  std::uint64_t seed = 12345;
};

/// Precedence: flags > config file > defaults. The config file is JSON with
/// the same keys as the flags; its path comes from --config or LIECURVE_CONFIG.
CommonConfig load_config(const std::string& explicit_path) {
  CommonConfig cfg;
  std::string path = explicit_path;
  if (path.empty()) {
    if (const char* env = std::getenv("LIECURVE_CONFIG")) path = env;
  }
  if (path.empty()) return cfg;
  const json j = lc::io::parse_json(lc::io::read_file(path), path);
  if (j.contains("h")) cfg.h = j["h"].get<double>();
  if (j.contains("tol_const")) cfg.tol_const = j["tol_const"].get<double>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  return cfg;
}

lc::FrenetData analyze_curve(const lc::CurveSamples& raw, const CommonConfig& cfg) {
  const auto curve = lc::reparametrize_arclength(raw);
  lc::FrenetOptions opt;
  (void)cfg;
  return lc::frenet_apparatus(curve, opt);
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
  } else {
    lc::io::atomic_write(out_path, content);
  }
}

lc::LieAlgebra3 algebra_by_name(const std::string& name) {
  lc::LieAlgebra3 g;
  if (!lc::presets::lookup(name, g)) {
    std::string msg = "unknown algebra '" + name + "'; available presets:";
    for (const auto& n : lc::presets::names()) msg += " " + n;
    throw lc::ParseError(msg);
  }
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frenet geometry of curves in 3-D Lie groups with bi-invariant metrics"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (or set LIECURVE_CONFIG)");

  // ---- analyze ----
  auto* analyze = app.add_subcommand("analyze", "Frenet apparatus of a curve file -> CSV + JSON summary");
  std::string an_curve, an_out, an_summary;
  bool an_frames = false;
  analyze->add_option("curve", an_curve, "curve JSON file")->required();
  analyze->add_option("--out", an_out, "CSV output path (default: stdout)");
  analyze->add_option("--summary", an_summary, "JSON summary output path");
  analyze->add_flag("--frames", an_frames, "include frame columns in the CSV");

  // ---- classify ----
  auto* cls_cmd = app.add_subcommand("classify", "helix classification of a curve file");
  std::string cl_curve, cl_out;
  cls_cmd->add_option("curve", cl_curve, "curve JSON file")->required();
  cls_cmd->add_option("--out", cl_out, "JSON output path (default: stdout)");

  // ---- mannheim ----
  auto* mann = app.add_subcommand("mannheim", "Mannheim condition, partner construction, inverse");
  mann->require_subcommand(1);
  auto* mn_check = mann->add_subcommand("check", "test the Mannheim condition");
  std::string mc_curve, mc_out;
  mn_check->add_option("curve", mc_curve, "curve JSON file")->required();
  mn_check->add_option("--out", mc_out, "JSON report path (default: stdout)");

  auto* mn_partner = mann->add_subcommand("partner", "partner frames, curvatures, positions");
  std::string mp_curve, mp_out, mp_curve_out;
  double mp_lambda = 0.0;
  bool mp_lambda_set = false;
  bool mp_force = false;
  mn_partner->add_option("curve", mp_curve, "curve JSON file")->required();
  mn_partner->add_option("--lambda", mp_lambda, "offset; default: estimated from the condition")
      ->each([&](const std::string&) { mp_lambda_set = true; });
  mn_partner->add_option("--out", mp_out, "JSON report path (default: stdout)");
  mn_partner->add_option("--curve-out", mp_curve_out, "write the partner curve file (needs positions)");
  mn_partner->add_flag("--force", mp_force, "construct even if the Mannheim condition fails");

  auto* mn_inverse = mann->add_subcommand("inverse", "offset back along the binormal");
  std::string mi_curve, mi_curve_out;
  double mi_mu = 0.0;
  mn_inverse->add_option("curve", mi_curve, "curve JSON file (the partner)")->required();
  mn_inverse->add_option("--mu", mi_mu, "offset along the binormal")->required();
  mn_inverse->add_option("--curve-out", mi_curve_out, "output curve file (default: stdout)");

  // ---- synthesize ----
  auto* synth = app.add_subcommand("synthesize", "generate a curve file from prescribed curvature");
  synth->set_help_flag("--help", "print help");  // frees --h for the step size
  std::string sy_gen, sy_algebra = "abelian", sy_out;
  double sy_kappa = 0.12, sy_tau = 0.16, sy_a = 1.0, sy_b = 1.0, sy_lambda = 0.5;
  std::vector<double> sy_range = {0.0, 2.0};
  double sy_h = 0.0;
  synth->add_option("generator", sy_gen, "helix | slant-mannheim | mannheim-sech2")->required();
  synth->add_option("--kappa", sy_kappa, "constant curvature (helix) or sech^2 amplitude");
  synth->add_option("--tau", sy_tau, "constant torsion (helix)");
  synth->add_option("--a", sy_a, "family parameter a (slant-mannheim)");
  synth->add_option("--b", sy_b, "family parameter b (slant-mannheim)");
  synth->add_option("--lambda", sy_lambda, "Mannheim offset (slant-mannheim, mannheim-sech2)");
  synth->add_option("--range", sy_range, "parameter range s0 s1")->expected(2);
  synth->add_option("--h", sy_h, "step size (default from config)");
  synth->add_option("--algebra", sy_algebra, "abelian | su2 | so3");
  synth->add_option("--out", sy_out, "output curve file (default: stdout)");

  // ---- verify-theorems ----
  auto* ver = app.add_subcommand("verify-theorems", "run the full verification suite");
  ver->set_help_flag("--help", "print help");  // frees --h for the step size
  std::string vt_out, vt_only;
  std::vector<double> vt_h;
  std::uint64_t vt_seed = 0;
  bool vt_seed_set = false;
  ver->add_option("--out", vt_out, "JSON report path (default: stdout)");
  ver->add_option("--only", vt_only, "run a single entry, e.g. thm-3.5 (others are skipped)");
  ver->add_option("--h", vt_h, "base step; given twice, also the cosh-family convergence pair");
  ver->add_option("--seed", vt_seed, "seed for randomized fixtures")
      ->each([&](const std::string&) { vt_seed_set = true; });

  // ---- groups ----
  auto* groups = app.add_subcommand("groups", "inspect the shipped algebra presets");
  groups->require_subcommand(1);
  auto* gr_list = groups->add_subcommand("list", "list preset names");
  auto* gr_show = groups->add_subcommand("show", "show structure constants and invariants");
  std::string gs_name;
  gr_show->add_option("name", gs_name, "preset name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const CommonConfig cfg = load_config(config_path);

    if (*analyze) {
      const auto raw = lc::io::load_curve(an_curve);
      const auto fd = analyze_curve(raw, cfg);
      emit(an_out, lc::io::frenet_to_csv(fd, an_frames));
      if (!an_summary.empty()) {
        json s;
        s["samples"] = fd.size();
        s["s_range"] = {fd.s.front(), fd.s.back()};
        s["kappa_range"] = {*std::min_element(fd.kappa.begin(), fd.kappa.end()),
                            *std::max_element(fd.kappa.begin(), fd.kappa.end())};
        s["tau_G_median"] = lc::median_of(fd.tau_G);
        s["classification"] = lc::io::classification_to_json(lc::classify(fd, cfg.tol_const));
        lc::io::atomic_write(an_summary, s.dump(2) + "\n");
      }
      return 0;
    }

    if (*cls_cmd) {
      const auto fd = analyze_curve(lc::io::load_curve(cl_curve), cfg);
      emit(cl_out, lc::io::classification_to_json(lc::classify(fd, cfg.tol_const)).dump(2) + "\n");
      return 0;
    }

    if (*mn_check) {
      const auto fd = analyze_curve(lc::io::load_curve(mc_curve), cfg);
      const auto rep = lc::mannheim_check(fd, {cfg.tol_const, 1e-4});
      emit(mc_out, lc::io::mannheim_report_to_json(rep).dump(2) + "\n");
      return 0;
    }

    if (*mn_partner) {
      const auto raw = lc::io::load_curve(mp_curve);
      const auto curve = lc::reparametrize_arclength(raw);
      const auto fd = lc::frenet_apparatus(curve);
      const auto rep = lc::mannheim_check(fd, {cfg.tol_const, 1e-4});
      if (!rep.is_mannheim && !mp_force)
        throw lc::ConditionViolated(
            "mannheim partner: the curve fails the Mannheim condition (lambda track deviation " +
            std::to_string(rep.constancy_deviation) + " > " + std::to_string(cfg.tol_const) +
            "); pass --force to construct anyway");
      const double lambda = mp_lambda_set ? mp_lambda : rep.lambda_hat;
      auto pd = lc::partner_frame(fd, lambda, {cfg.tol_const, 1e-4});
      lc::partner_curvatures(pd, fd);
      json out = lc::io::partner_to_json(pd);
      out["lambda_source"] = mp_lambda_set ? "flag" : "estimated";
      out["is_mannheim"] = rep.is_mannheim;
      if (curve.has_positions()) {
        const auto beta = lc::construct_partner_positions(curve, fd, lambda);
        out["realization"] = curve.realization == lc::Realization::euclidean
                                 ? "euclidean_translation"
                                 : "geodesic_offset (geometric realization)";
        if (!mp_curve_out.empty()) {
          json prov;
          prov["generator"] = "mannheim-partner";
          prov["lambda"] = lambda;
          prov["realization"] = out["realization"];
          lc::io::atomic_write(mp_curve_out, lc::io::curve_to_json(beta, prov).dump(2) + "\n");
        }
      } else if (!mp_curve_out.empty()) {
        throw lc::MissingPositions("mannheim partner: --curve-out needs positions on the input curve");
      }
      emit(mp_out, out.dump(2) + "\n");
      return 0;
    }

    if (*mn_inverse) {
      if (mi_mu == 0.0) throw lc::MuZero("mannheim inverse: mu must be nonzero");
      const auto raw = lc::io::load_curve(mi_curve);
      const auto curve = lc::reparametrize_arclength(raw);
      const auto fd = lc::frenet_apparatus(curve);
      const auto alpha = lc::construct_inverse_partner(curve, fd, mi_mu);
      json prov;
      prov["generator"] = "mannheim-inverse";
      prov["mu"] = mi_mu;
      emit(mi_curve_out, lc::io::curve_to_json(alpha, prov).dump(2) + "\n");
      return 0;
    }

    if (*synth) {
      const double h = sy_h > 0.0 ? sy_h : cfg.h;
      const auto algebra = algebra_by_name(sy_algebra);
      lc::CurvatureSpec spec;
      json prov;
      prov["generator"] = sy_gen;
      prov["algebra"] = sy_algebra;
      prov["h"] = h;
      prov["range"] = sy_range;
      if (sy_gen == "helix") {
        spec = lc::generate_helix(sy_kappa, sy_tau, algebra, sy_range[0], sy_range[1], h);
        prov["kappa"] = sy_kappa;
        prov["tau"] = sy_tau;
      } else if (sy_gen == "slant-mannheim") {
        spec = lc::generate_slant_mannheim(sy_a, sy_b, sy_lambda, algebra, sy_range[0], sy_range[1], h);
        prov["a"] = sy_a;
        prov["b"] = sy_b;
        prov["lambda"] = sy_lambda;
      } else if (sy_gen == "mannheim-sech2") {
        const double amp = sy_kappa;
        spec = lc::generate_mannheim_family(
            sy_lambda, [amp](double s) { return amp / (std::cosh(s) * std::cosh(s)); }, algebra,
            sy_range[0], sy_range[1], h);
        prov["kappa_amplitude"] = amp;
        prov["lambda"] = sy_lambda;
      } else {
        throw lc::ParseError("unknown generator '" + sy_gen +
                             "'; available: helix, slant-mannheim, mannheim-sech2");
      }
      const auto out = lc::integrate_frame(spec);
      emit(sy_out, lc::io::curve_to_json(out.curve, prov).dump(2) + "\n");
      return 0;
    }

    if (*ver) {
      lc::verify::VerifyConfig vc;
      vc.tol_const = cfg.tol_const;
      vc.seed = vt_seed_set ? vt_seed : cfg.seed;
      vc.only = vt_only;
      if (!vt_h.empty()) vc.h = vt_h.front();
      if (vt_h.size() >= 2) vc.h_pair_cosh = {vt_h[0], vt_h[1]};
      const auto rep = lc::verify::run_verification(vc);
      emit(vt_out, lc::io::verification_report_to_json(rep).dump(2) + "\n");
      std::cerr << "verify-theorems: " << (rep.all_passed() ? "all entries passed" : "FAILURES present")
                << " (" << rep.wall_seconds << " s)\n";
      return rep.all_passed() ? 0 : 6;
    }

    if (*gr_list) {
      for (const auto& n : lc::presets::names()) std::cout << n << "\n";
      return 0;
    }

    if (*gr_show) {
      const auto g = algebra_by_name(gs_name);
      json j = lc::io::algebra_to_json(g);
      const auto bi = lc::check_bi_invariance(g);
      j["bi_invariant"] = bi.ok;
      j["jacobi"] = lc::check_jacobi(g);
      const lc::Vec3 e1{1, 0, 0}, e2{0, 1, 0};
      j["tau_G"] = 0.5 * lc::dot(g.bracket(e1, e2), lc::cross(e1, e2, g.orientation));
      std::cout << j.dump(2) << "\n";
      return 0;
    }
  } catch (const lc::VanishingCurvature& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const lc::HVanishes& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const lc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const lc::TooFewSamples& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const lc::NonMonotoneParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const lc::GridMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const lc::MissingPositions& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const lc::Error& e) {
    // remaining domain errors: generators, mu = 0, step control
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
