#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "liecurve/helix.hpp"
#include "liecurve/mannheim.hpp"
#include "liecurve/synthesis.hpp"

namespace liecurve::verify {

struct VerifyConfig {
  double h = 1e-3;
  double tol_const = 1e-4;
  std::uint64_t seed = 12345;
  // Step pairs for the 4th-order convergence check. The pairs sit where
  // truncation error dominates rounding for each family.
  std::vector<double> h_pair_cosh = {4e-3, 2e-3};
  std::vector<double> h_pair_helix = {0.25, 0.125};
  std::string only;  // when nonempty, run just this theorem id
};

struct TheoremEntry {
  std::string id;
  std::string status;  // pass | fail | skipped
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::string notes;
};

struct ConvergenceResult {
  std::string family;
  std::vector<double> h;
  std::vector<double> max_rel_error;
  double ratio = 0.0;
};

struct VerificationReport {
  VerifyConfig config;
  std::vector<TheoremEntry> entries;
  std::vector<ConvergenceResult> convergence;
  double wall_seconds = 0.0;

  bool all_passed() const {
    for (const auto& e : entries)
      if (e.status == "fail") return false;
    return true;
  }
};

namespace detail {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline Vec3 random_unit(std::mt19937_64& rng) {
  const double z = 2.0 * uniform01(rng) - 1.0;
  const double phi = 2.0 * M_PI * uniform01(rng);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

/// Orthonormal frame with B = T x N in the algebra's orientation.
inline std::array<Vec3, 3> random_frame(std::mt19937_64& rng, double orientation) {
  const Vec3 T = random_unit(rng);
  // deterministic vector not parallel to T
  Vec3 a = std::abs(T[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  Vec3 u = normalized(a - dot(a, T) * T);
  Vec3 v = cross_std(T, u);
  const double psi = 2.0 * M_PI * uniform01(rng);
  const Vec3 N = std::cos(psi) * u + std::sin(psi) * v;
  return {T, N, cross(T, N, orientation)};
}

inline double rel_err(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

inline double preset_tau_G(const LieAlgebra3& g) {
  const Vec3 e1{1, 0, 0}, e2{0, 1, 0};
  return 0.5 * dot(g.bracket(e1, e2), cross(e1, e2, g.orientation));
}

struct Fixture {
  SynthesizedCurve synth;
  FrenetData fd;  // computed numerically from the integrated tangents
};

inline Fixture make_fixture(const CurvatureSpec& spec, int margin = 2) {
  Fixture f;
  f.synth = integrate_frame(spec);
  FrenetOptions opt;
  opt.interior_margin = margin;
  f.fd = frenet_apparatus(f.synth.curve, opt);
  return f;
}

inline CurvatureSpec helix_spec(const LieAlgebra3& g, double h, double s0 = 0.0, double s1 = 2.0) {
  // kappa = 0.12, H = 4/3 in every preset (tau shifts by the preset tau_G)
  return generate_helix(0.12, 0.16 + preset_tau_G(g), g, s0, s1, h);
}

inline CurvatureSpec cosh_spec(const LieAlgebra3& g, double h) {
  return generate_slant_mannheim(1.0, 1.0, 0.5, g, 0.5, 2.5, h);
}

/// Max relative reproduction error of the prescribed kappa and tau tracks
/// after integrate_frame -> frenet_apparatus, over interior samples.
inline double roundtrip_error(const CurvatureSpec& spec) {
  Fixture f = make_fixture(spec);
  double worst = 0.0;
  for (size_t i = f.fd.interior_begin(); i < f.fd.interior_end(); ++i) {
    worst = std::max(worst, rel_err(f.fd.kappa[i], f.synth.frenet.kappa[i]));
    worst = std::max(worst, rel_err(f.fd.tau[i], f.synth.frenet.tau[i]));
  }
  return worst;
}

/// Smooth random curvature profile satisfying the Mannheim condition with a
/// monotone H (no H' zero-crossings): lambda*kappa descends from ~0.7 with a
/// small sinusoidal ripple.
inline CurvatureSpec random_mannheim_spec(std::mt19937_64& rng, const LieAlgebra3& g, double h) {
  const double lambda = 0.3 + 1.2 * uniform01(rng);
  const double slope = 0.25 + 0.15 * uniform01(rng);
  const double w = 0.5 + 1.5 * uniform01(rng);
  const double p = 2.0 * M_PI * uniform01(rng);
  const double S = 2.0;
  const double eps = 0.4 * slope / (S * w);  // keeps d(lambda*kappa)/ds < 0
  auto kappa = [=](double s) {
    return (0.7 - slope * s / S + eps * std::sin(w * s + p)) / lambda;
  };
  return generate_mannheim_family(lambda, kappa, g, 0.0, S, h);
}

}  // namespace detail

inline VerificationReport run_verification(const VerifyConfig& cfg) {
  using detail::rel_err;
  const auto t0 = std::chrono::steady_clock::now();

  VerificationReport rep;
  rep.config = cfg;

  const std::vector<LieAlgebra3> algebras = {presets::abelian(), presets::su2(), presets::so3()};

  auto want = [&cfg](const std::string& id) { return cfg.only.empty() || cfg.only == id; };
  auto skip = [&rep](const std::string& id) {
    rep.entries.push_back({id, "skipped", 0.0, 0.0, "filtered out by --only"});
  };

  // ---- prop-2.1: bracket-frame identities on random orthonormal frames ----
  if (want("prop-2.1")) {
    std::mt19937_64 rng(cfg.seed);
    double worst = 0.0;
    for (const auto& g : algebras) {
      for (int k = 0; k < 100; ++k) {
        const auto f = detail::random_frame(rng, g.orientation);
        const double tg = 0.5 * dot(g.bracket(f[0], f[1]), f[2]);
        worst = std::max(worst, norm(g.bracket(f[0], f[1]) - 2.0 * tg * f[2]));
        worst = std::max(worst, norm(g.bracket(f[0], f[2]) + 2.0 * tg * f[1]));
      }
    }
    TheoremEntry e{"prop-2.1", worst <= 1e-6 ? "pass" : "fail", worst, 1e-6,
                   "[T,N] = 2 tau_G B and [T,B] = -2 tau_G N on 100 random frames per preset"};
    rep.entries.push_back(e);
  } else skip("prop-2.1");

  // ---- thm-2.1: general helix <=> tau = c kappa + tau_G ----
  if (want("thm-2.1")) {
    auto hf = detail::make_fixture(detail::helix_spec(presets::abelian(), cfg.h));
    const auto cls = classify(hf.fd, cfg.tol_const);
    double worst = 0.0;
    std::string notes;
    bool ok = cls.kind == HelixKind::general_helix && rel_err(cls.witness, 4.0 / 3.0) <= 1e-4;
    if (ok) {
      for (size_t i = hf.fd.interior_begin(); i < hf.fd.interior_end(); ++i)
        worst = std::max(worst, std::abs(hf.fd.tau[i] - cls.witness * hf.fd.kappa[i] - hf.fd.tau_G[i]));
      ok = worst <= 1e-4;
      notes = "circular helix classified general_helix, c = " + std::to_string(cls.witness);
    } else {
      notes = "circular helix misclassified as " + std::string(to_string(cls.kind));
    }
    // converse: nonconstant H must not classify as general helix
    auto cf = detail::make_fixture(detail::cosh_spec(presets::abelian(), cfg.h));
    const auto ccls = classify(cf.fd, cfg.tol_const);
    if (ccls.kind == HelixKind::general_helix) {
      ok = false;
      notes += "; cosh family wrongly classified general_helix";
    }
    rep.entries.push_back({"thm-2.1", ok ? "pass" : "fail", worst, 1e-4, notes});
  } else skip("thm-2.1");

  // ---- thm-2.2: slant helix <=> sigma_N constant ----
  if (want("thm-2.2")) {
    auto cf = detail::make_fixture(detail::cosh_spec(presets::abelian(), cfg.h));
    const auto cls = classify(cf.fd, cfg.tol_const);
    bool ok = cls.kind == HelixKind::slant_helix && rel_err(cls.witness, 2.0) <= 1e-3;
    std::string notes = "cosh family: kind = " + std::string(to_string(cls.kind)) +
                        ", sigma_N = " + std::to_string(cls.witness);
    // converse control: kappa = 1, tau = s is neither
    {
      CurvatureSpec spec;
      spec.algebra = presets::abelian();
      spec.kappa = [](double) { return 1.0; };
      spec.tau = [](double s) { return s; };
      spec.s0 = 0.5; spec.s1 = 2.5; spec.h = cfg.h;
      spec.realization = Realization::euclidean;
      auto nf = detail::make_fixture(spec);
      const auto ncls = classify(nf.fd, cfg.tol_const);
      if (ncls.kind != HelixKind::neither) {
        ok = false;
        notes += "; control curve misclassified as " + std::string(to_string(ncls.kind));
      }
    }
    rep.entries.push_back({"thm-2.2", ok ? "pass" : "fail",
                           std::abs(cls.witness - 2.0), 1e-3, notes});
  } else skip("thm-2.2");

  // ---- thm-3.1: corresponding points a fixed distance apart ----
  if (want("thm-3.1")) {
    double worst_abelian = 0.0, worst_su2 = 0.0;
    {
      auto f = detail::make_fixture(detail::cosh_spec(presets::abelian(), cfg.h));
      const auto mr = mannheim_check(f.fd, {cfg.tol_const, 1e-4});
      const auto beta = construct_partner_positions(f.synth.curve, f.fd, mr.lambda_hat);
      worst_abelian = constant_distance_check(f.synth.curve, beta).max_deviation;
    }
    {
      auto f = detail::make_fixture(detail::cosh_spec(presets::su2(), cfg.h));
      const auto mr = mannheim_check(f.fd, {cfg.tol_const, 1e-4});
      const auto beta = construct_partner_positions(f.synth.curve, f.fd, mr.lambda_hat);
      worst_su2 = constant_distance_check(f.synth.curve, beta).max_deviation;
    }
    const bool ok = worst_abelian <= 1e-10 && worst_su2 <= 1e-8;
    rep.entries.push_back({"thm-3.1", ok ? "pass" : "fail", std::max(worst_abelian, worst_su2), 1e-8,
                           "abelian deviation " + std::to_string(worst_abelian) +
                               "; su2 geodesic-offset deviation " + std::to_string(worst_su2)});
  } else skip("thm-3.1");

  // ---- thm-3.2: Mannheim condition lambda kappa (1+H^2) = 1 ----
  if (want("thm-3.2")) {
    bool ok = true;
    std::string notes;
    double worst = 0.0;
    {
      auto f = detail::make_fixture(detail::helix_spec(presets::abelian(), cfg.h));
      const auto mr = mannheim_check(f.fd, {cfg.tol_const, 1e-4});
      worst = std::abs(mr.lambda_hat - 3.0);
      ok = mr.is_mannheim && worst <= 1e-4;
      notes = "circular helix: lambda_hat = " + std::to_string(mr.lambda_hat);
    }
    {
      auto f = detail::make_fixture(detail::cosh_spec(presets::abelian(), cfg.h));
      const auto mr = mannheim_check(f.fd, {cfg.tol_const, 1e-4});
      if (!mr.is_mannheim || rel_err(mr.lambda_hat, 0.5) > 1e-4) {
        ok = false;
        notes += "; cosh family failed the condition";
      }
    }
    {
      // negative control: kappa = 1, tau = s has a nonconstant lambda track
      CurvatureSpec spec;
      spec.algebra = presets::abelian();
      spec.kappa = [](double) { return 1.0; };
      spec.tau = [](double s) { return s; };
      spec.s0 = 0.5; spec.s1 = 2.5; spec.h = cfg.h;
      spec.realization = Realization::euclidean;
      auto f = detail::make_fixture(spec);
      const auto mr = mannheim_check(f.fd, {cfg.tol_const, 1e-4});
      if (mr.is_mannheim) {
        ok = false;
        notes += "; negative control wrongly accepted";
      } else {
        notes += "; negative control rejected";
      }
    }
    rep.entries.push_back({"thm-3.2", ok ? "pass" : "fail", worst, 1e-4, notes});
  } else skip("thm-3.2");

  // ---- corollary-abelian: lambda (kappa^2 + tau^2) = kappa when tau_G = 0 ----
  if (want("corollary-abelian")) {
    auto f = detail::make_fixture(detail::helix_spec(presets::abelian(), cfg.h));
    const auto mr = mannheim_check(f.fd, {cfg.tol_const, 1e-4});
    double worst = 0.0;
    for (size_t i = f.fd.interior_begin(); i < f.fd.interior_end(); ++i)
      worst = std::max(worst, std::abs(mr.lambda_hat * (f.fd.kappa[i] * f.fd.kappa[i] +
                                                        f.fd.tau[i] * f.fd.tau[i]) -
                                       f.fd.kappa[i]));
    const bool ok = worst <= 1e-4 && std::abs(mr.lambda_hat - 3.0) <= 1e-4;
    rep.entries.push_back({"corollary-abelian", ok ? "pass" : "fail", worst, 1e-4,
                           "abelian helix: lambda_hat = " + std::to_string(mr.lambda_hat) +
                               ", max |lambda (kappa^2+tau^2) - kappa|"});
  } else skip("corollary-abelian");

  // ---- thm-3.2.5: partner-side characterization with constant mu ----
  if (want("thm-3.2.5")) {
    auto f = detail::make_fixture(detail::cosh_spec(presets::abelian(), cfg.h));
    const auto mr = mannheim_check(f.fd, {cfg.tol_const, 1e-4});
    auto pd = partner_frame(f.fd, mr.lambda_hat, {cfg.tol_const, 1e-4});
    partner_curvatures(pd, f.fd);
    const auto bs = beta_side_check(pd.s_bar, pd.kappa_beta, pd.H_beta, std::nullopt,
                                    static_cast<size_t>(pd.interior_margin), cfg.tol_const);
    const bool ok = bs.qualifies && bs.mu_constancy_deviation <= 1e-4;
    rep.entries.push_back({"thm-3.2.5", ok ? "pass" : "fail", bs.max_residual,
                           cfg.tol_const * bs.scale,
                           "fitted mu = " + std::to_string(bs.mu) + " (expected -lambda = " +
                               std::to_string(-mr.lambda_hat) + "), mu deviation " +
                               std::to_string(bs.mu_constancy_deviation) + "; " + bs.note});
  } else skip("thm-3.2.5");

  // ---- prop-3.1: tau_G is shared by the pair ----
  if (want("prop-3.1")) {
    double worst = 0.0;
    for (const auto& g : algebras) {
      for (int fam = 0; fam < 2; ++fam) {
        auto f = detail::make_fixture(fam == 0 ? detail::helix_spec(g, cfg.h)
                                               : detail::cosh_spec(g, cfg.h));
        const auto mr = mannheim_check(f.fd, {cfg.tol_const, 1e-4});
        const auto pd = partner_frame(f.fd, mr.lambda_hat, {cfg.tol_const, 1e-4});
        worst = std::max(worst, tau_G_invariance_check(f.fd, pd));
      }
    }
    rep.entries.push_back({"prop-3.1", worst <= 1e-6 ? "pass" : "fail", worst, 1e-6,
                           "max |tau_G_beta - tau_G| over presets x {helix, cosh family}"});
  } else skip("prop-3.1");

  // ---- thm-3.3: partner curvature formulas ----
  if (want("thm-3.3")) {
    auto f = detail::make_fixture(detail::cosh_spec(presets::abelian(), cfg.h));
    const auto mr = mannheim_check(f.fd, {cfg.tol_const, 1e-4});
    auto pd = partner_frame(f.fd, mr.lambda_hat, {cfg.tol_const, 1e-4});
    partner_curvatures(pd, f.fd);
    double worst_formula = 0.0;
    for (size_t i = pd.interior_begin(); i < pd.interior_end(); ++i) {
      const double s = pd.s[i];
      worst_formula = std::max(worst_formula, rel_err(pd.kappa_beta[i], 1.0 / std::sinh(s)));
      worst_formula = std::max(worst_formula, rel_err(pd.tau_beta[i], 2.0 / std::sinh(s)));
    }
    // positional recomputation of the partner apparatus
    const auto beta_raw = construct_partner_positions(f.synth.curve, f.fd, mr.lambda_hat);
    const auto beta = reparametrize_arclength(beta_raw);
    const auto fdb = frenet_apparatus(beta);
    double worst_pos = 0.0;
    for (size_t i = fdb.interior_begin(); i < fdb.interior_end(); ++i) {
      const double s_src = beta.source_param[i];
      worst_pos = std::max(worst_pos, rel_err(fdb.kappa[i], 1.0 / std::sinh(s_src)));
      worst_pos = std::max(worst_pos, rel_err(fdb.tau[i], 2.0 / std::sinh(s_src)));
    }
    const bool ok = worst_formula <= 1e-4 && worst_pos <= 1e-3;
    rep.entries.push_back({"thm-3.3", ok ? "pass" : "fail", std::max(worst_formula, worst_pos), 1e-3,
                           "formula-route rel error " + std::to_string(worst_formula) +
                               "; positional recomputation rel error " + std::to_string(worst_pos)});
  } else skip("thm-3.3");

  // ---- thm-3.4: alpha slant <=> partner is a general helix ----
  if (want("thm-3.4")) {
    bool ok = true;
    double worst_gap = 0.0, worst_hbeta = 0.0;
    std::string notes;
    for (const auto& g : algebras) {
      auto f = detail::make_fixture(detail::cosh_spec(g, cfg.h));
      const auto mr = mannheim_check(f.fd, {cfg.tol_const, 1e-4});
      auto pd = partner_frame(f.fd, mr.lambda_hat, {cfg.tol_const, 1e-4});
      partner_curvatures(pd, f.fd);
      const auto dr = duality_check(f.fd, pd, cfg.tol_const);
      ok = ok && dr.biconditional_holds && dr.alpha_kind == HelixKind::slant_helix &&
           dr.beta_kind == HelixKind::general_helix;
      worst_gap = std::max(worst_gap, dr.max_pointwise_gap);
      const auto chb = constancy_test(pd.H_beta, pd.interior_begin(), cfg.tol_const);
      worst_hbeta = std::max(worst_hbeta, std::abs(chb.median - 2.0));
    }
    notes = "cosh family per preset: H_beta offset from 2 at most " + std::to_string(worst_hbeta) +
            ", pointwise |H_beta - sigma_N| gap " + std::to_string(worst_gap);
    ok = ok && worst_hbeta <= 1e-3 && worst_gap <= 1e-4;
    // randomized Mannheim tracks: generically neither slant nor general,
    // the biconditional holds vacuously
    std::mt19937_64 rng(cfg.seed + 1);
    for (int k = 0; k < 2; ++k) {
      auto f = detail::make_fixture(detail::random_mannheim_spec(rng, presets::abelian(), cfg.h));
      const auto mr = mannheim_check(f.fd, {cfg.tol_const, 1e-4});
      if (!mr.is_mannheim) { ok = false; notes += "; random track failed the Mannheim condition"; continue; }
      auto pd = partner_frame(f.fd, mr.lambda_hat, {cfg.tol_const, 1e-4});
      partner_curvatures(pd, f.fd);
      const auto dr = duality_check(f.fd, pd, cfg.tol_const);
      if (!dr.biconditional_holds) { ok = false; notes += "; random track broke the biconditional"; }
    }
    // helix: the partner degenerates to a geodesic (covered by thm-3.6)
    {
      auto f = detail::make_fixture(detail::helix_spec(presets::abelian(), cfg.h));
      const auto mr = mannheim_check(f.fd, {cfg.tol_const, 1e-4});
      auto pd = partner_frame(f.fd, mr.lambda_hat, {cfg.tol_const, 1e-4});
      partner_curvatures(pd, f.fd);
      const auto dr = duality_check(f.fd, pd, cfg.tol_const);
      if (!dr.theorem_geodesic_case) { ok = false; notes += "; helix did not report the geodesic case"; }
      else notes += "; helix delegated to the geodesic-mate criterion";
    }
    rep.entries.push_back({"thm-3.4", ok ? "pass" : "fail", worst_gap, 1e-4, notes});
  } else skip("thm-3.4");

  // ---- thm-3.5: which governing ODE does the H family satisfy? ----
  if (want("thm-3.5")) {
    struct Case { double a, b, s0, s1; };
    const std::vector<Case> cases = {{1.0, 1.0, 0.5, 2.5}, {2.0, 1.0, 0.5, 2.5}, {0.5, 0.7, 1.5, 3.5}};
    bool all_corrected = true, any_displayed = false;
    double worst = 0.0;
    for (const auto& c : cases) {
      const size_t n = static_cast<size_t>(std::llround((c.s1 - c.s0) / cfg.h)) + 1;
      std::vector<double> s(n);
      for (size_t i = 0; i < n; ++i)
        s[i] = c.s0 + (c.s1 - c.s0) * static_cast<double>(i) / static_cast<double>(n - 1);
      const auto H = slant_mannheim_H(c.a, c.b, s);
      const auto rep_ode = slant_ode_residual(s, H);
      all_corrected = all_corrected && rep_ode.consistent_form == SlantOdeReport::Form::corrected;
      any_displayed = any_displayed || rep_ode.consistent_form == SlantOdeReport::Form::displayed ||
                      rep_ode.consistent_form == SlantOdeReport::Form::both;
      worst = std::max(worst, rep_ode.max_corrected / rep_ode.scale);
    }
    const bool ok = all_corrected && !any_displayed;
    rep.entries.push_back({"thm-3.5", ok ? "pass" : "fail", worst, 1e-6,
                           ok ? "the family (a e^{bs} - e^{-bs}/a)/2 satisfies (1+H^2)H'' - H(H')^2 = 0 "
                                "exclusively; the (1+H^2)H'' - (H')^2 = 0 variant does not hold "
                                "(checked for (a,b) = (1,1), (2,1), (0.5,0.7))"
                              : "ODE-form detection did not single out one candidate"});
  } else skip("thm-3.5");

  // ---- thm-3.6: alpha is a general helix <=> the partner is a geodesic ----
  if (want("thm-3.6")) {
    bool ok = true;
    double helix_kb = 0.0;
    {
      auto f = detail::make_fixture(detail::helix_spec(presets::abelian(), cfg.h));
      const auto mr = mannheim_check(f.fd, {cfg.tol_const, 1e-4});
      auto pd = partner_frame(f.fd, mr.lambda_hat, {cfg.tol_const, 1e-4});
      partner_curvatures(pd, f.fd);
      for (size_t i = pd.interior_begin(); i < pd.interior_end(); ++i)
        helix_kb = std::max(helix_kb, std::abs(pd.kappa_beta[i]));
      ok = ok && helix_kb <= 1e-6 && geodesic_mate_check(f.fd, pd.kappa_beta,
                                                         static_cast<size_t>(pd.interior_margin),
                                                         cfg.tol_const);
    }
    {
      auto f = detail::make_fixture(detail::cosh_spec(presets::abelian(), cfg.h));
      const auto mr = mannheim_check(f.fd, {cfg.tol_const, 1e-4});
      auto pd = partner_frame(f.fd, mr.lambda_hat, {cfg.tol_const, 1e-4});
      partner_curvatures(pd, f.fd);
      double min_kb = std::numeric_limits<double>::infinity();
      for (size_t i = pd.interior_begin(); i < pd.interior_end(); ++i)
        min_kb = std::min(min_kb, std::abs(pd.kappa_beta[i]));
      ok = ok && min_kb > cfg.tol_const &&
           geodesic_mate_check(f.fd, pd.kappa_beta, static_cast<size_t>(pd.interior_margin), cfg.tol_const);
      // corrupted pair: constant H with a nonvanishing kappa_beta must be flagged
      auto hf = detail::make_fixture(detail::helix_spec(presets::abelian(), cfg.h));
      std::vector<double> injected(hf.fd.size(), 1.0);
      if (geodesic_mate_check(hf.fd, injected, 2, cfg.tol_const)) ok = false;
    }
    rep.entries.push_back({"thm-3.6", ok ? "pass" : "fail", helix_kb, 1e-6,
                           "helix partner |kappa_beta| <= " + std::to_string(helix_kb) +
                               "; cosh partner curvature bounded away from zero; corrupted pair flagged"});
  } else skip("thm-3.6");

  // ---- 4th-order convergence of the round trip ----
  if (cfg.only.empty()) {
    auto conv = [&](const std::string& family, const std::vector<double>& pair,
                    auto make_spec) {
      ConvergenceResult c;
      c.family = family;
      for (const double h : pair) {
        c.h.push_back(h);
        c.max_rel_error.push_back(detail::roundtrip_error(make_spec(h)));
      }
      if (c.max_rel_error.size() >= 2 && c.max_rel_error[1] > 0.0)
        c.ratio = c.max_rel_error[0] / c.max_rel_error[1];
      rep.convergence.push_back(c);
    };
    conv("circular_helix", cfg.h_pair_helix,
         [](double h) { return detail::helix_spec(presets::abelian(), h, 0.0, 40.0); });
    conv("cosh_family", cfg.h_pair_cosh,
         [](double h) { return detail::cosh_spec(presets::abelian(), h); });
  }

  std::sort(rep.entries.begin(), rep.entries.end(),
            [](const TheoremEntry& a, const TheoremEntry& b) { return a.id < b.id; });
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace liecurve::verify
