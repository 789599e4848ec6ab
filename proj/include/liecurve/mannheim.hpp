#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "liecurve/frenet.hpp"

namespace liecurve {

struct MannheimOptions {
  double tol_const = 1e-4;   // constancy threshold for the lambda track
  double h_min = 1e-4;       // |H| floor below which the partner degenerates
};

/// Verdict on the Mannheim condition lambda * kappa * (1 + H^2) = 1.
struct MannheimReport {
  double lambda_hat = 0.0;                 // median of the lambda track (interior)
  std::vector<double> lambda_track;        // 1 / (kappa (1 + H^2))
  std::vector<double> residual;            // |lambda_hat * kappa * (1+H^2) - 1|
  double max_residual = 0.0;               // over interior samples
  double constancy_deviation = 0.0;
  bool is_mannheim = false;
  double tol_const = 1e-4;
};

inline MannheimReport mannheim_check(const FrenetData& fd, const MannheimOptions& opt = {}) {
  const size_t n = fd.size();
  MannheimReport rep;
  rep.tol_const = opt.tol_const;
  rep.lambda_track.resize(n);
  for (size_t i = 0; i < n; ++i)
    rep.lambda_track[i] = 1.0 / (fd.kappa[i] * (1.0 + fd.H[i] * fd.H[i]));

  const auto c = constancy_test(rep.lambda_track, fd.interior_begin(), opt.tol_const);
  rep.lambda_hat = c.median;
  rep.constancy_deviation = c.max_deviation;
  rep.residual.resize(n);
  for (size_t i = 0; i < n; ++i)
    rep.residual[i] = std::abs(rep.lambda_hat * fd.kappa[i] * (1.0 + fd.H[i] * fd.H[i]) - 1.0);
  for (size_t i = fd.interior_begin(); i < fd.interior_end(); ++i)
    rep.max_residual = std::max(rep.max_residual, rep.residual[i]);
  rep.is_mannheim = c.passes && rep.max_residual <= opt.tol_const;
  return rep;
}

/// Partner apparatus of a Mannheim curve on the working interval where H is
/// bounded away from zero: frames, arc rate, accumulated partner arc length,
/// and (once filled in) the partner curvature tracks.
struct PartnerData {
  size_t first = 0;                        // index into the source FrenetData
  double lambda = 0.0;
  std::vector<double> s;                   // source arc length, working interval
  std::vector<double> s_bar;               // partner arc length (trapezoidal)
  std::vector<double> arc_rate;            // ds_bar/ds = lambda kappa H sqrt(1+H^2)
  std::vector<Vec3> T_beta, N_beta, B_beta;
  std::vector<double> kappa_beta, tau_beta, H_beta;
  std::vector<std::pair<double, double>> trimmed;  // s-intervals dropped for |H| < h_min
  int interior_margin = 2;

  size_t size() const { return s.size(); }
  size_t interior_begin() const { return static_cast<size_t>(interior_margin); }
  size_t interior_end() const {
    return size() > 2 * static_cast<size_t>(interior_margin)
               ? size() - static_cast<size_t>(interior_margin)
               : interior_begin();
  }
};

/// Partner frames from the base apparatus:
///   T_beta = (H T + B)/sqrt(1+H^2),  B_beta = N,  N_beta = (T - H B)/sqrt(1+H^2),
/// with ds_bar/ds = lambda kappa H sqrt(1+H^2). The working interval is the
/// longest run of samples with |H| >= h_min; everything else is reported as
/// trimmed. Throws HVanishes when no usable run remains.
inline PartnerData partner_frame(const FrenetData& fd, double lambda, const MannheimOptions& opt = {}) {
  const size_t n = fd.size();
  size_t best_b = 0, best_e = 0;
  size_t b = 0;
  std::vector<std::pair<size_t, size_t>> runs;
  while (b < n) {
    while (b < n && std::abs(fd.H[b]) < opt.h_min) ++b;
    size_t e = b;
    while (e < n && std::abs(fd.H[e]) >= opt.h_min) ++e;
    if (e > b) runs.emplace_back(b, e);
    if (e - b > best_e - best_b) { best_b = b; best_e = e; }
    b = e;
  }
  if (best_e - best_b < 8)
    throw HVanishes("partner_frame: |H| < " + std::to_string(opt.h_min) +
                    " everywhere (or nearly); the partner parametrization degenerates. "
                    "Trim the input to an interval where H is bounded away from zero.");

  PartnerData pd;
  pd.first = best_b;
  pd.lambda = lambda;
  pd.interior_margin = fd.interior_margin;
  const size_t m = best_e - best_b;
  pd.s.assign(fd.s.begin() + static_cast<long>(best_b), fd.s.begin() + static_cast<long>(best_e));
  pd.T_beta.resize(m);
  pd.N_beta.resize(m);
  pd.B_beta.resize(m);
  pd.arc_rate.resize(m);
  for (size_t i = 0; i < m; ++i) {
    const size_t k = best_b + i;
    const double H = fd.H[k];
    const double r = std::sqrt(1.0 + H * H);
    pd.T_beta[i] = (H * fd.T[k] + fd.B[k]) / r;
    pd.B_beta[i] = fd.N[k];
    pd.N_beta[i] = (fd.T[k] - H * fd.B[k]) / r;
    pd.arc_rate[i] = lambda * fd.kappa[k] * H * r;
  }
  pd.s_bar.resize(m);
  pd.s_bar[0] = 0.0;
  for (size_t i = 0; i + 1 < m; ++i)
    pd.s_bar[i + 1] = pd.s_bar[i] + 0.5 * (pd.arc_rate[i] + pd.arc_rate[i + 1]) * (pd.s[i + 1] - pd.s[i]);

  // excluded regions, for the report
  if (best_b > 0) pd.trimmed.emplace_back(fd.s.front(), fd.s[best_b]);
  if (best_e < n) pd.trimmed.emplace_back(fd.s[best_e - 1], fd.s.back());
  return pd;
}

/// Partner curvature tracks:
///   kappa_beta = H' / (lambda kappa H (1+H^2)^{3/2}),
///   tau_beta   = 1/(lambda H) + tau_G_beta,   H_beta = (tau_beta - tau_G_beta)/kappa_beta,
/// with tau_G_beta = tau_G (the group torsion is shared by the pair).
inline void partner_curvatures(PartnerData& pd, const FrenetData& fd) {
  const size_t m = pd.size();
  pd.kappa_beta.resize(m);
  pd.tau_beta.resize(m);
  pd.H_beta.resize(m);
  for (size_t i = 0; i < m; ++i) {
    const size_t k = pd.first + i;
    const double H = fd.H[k];
    const double r2 = 1.0 + H * H;
    pd.kappa_beta[i] = fd.H_prime[k] / (pd.lambda * fd.kappa[k] * H * r2 * std::sqrt(r2));
    pd.tau_beta[i] = 1.0 / (pd.lambda * H) + fd.tau_G[k];
    pd.H_beta[i] = (pd.tau_beta[i] - fd.tau_G[k]) / pd.kappa_beta[i];
  }
}

/// Max |tau_G_beta - tau_G| where tau_G_beta is recomputed from the partner
/// frames through the bracket.
inline double tau_G_invariance_check(const FrenetData& fd, const PartnerData& pd) {
  const auto tgb = lie_torsion(pd.T_beta, pd.N_beta, pd.B_beta, fd.algebra);
  double worst = 0.0;
  for (size_t i = 0; i < pd.size(); ++i)
    worst = std::max(worst, std::abs(tgb[i] - fd.tau_G[pd.first + i]));
  return worst;
}

/// Partner positions beta = alpha offset by lambda along the principal
/// normal: literal translation in the abelian realization, the geodesic
/// offset alpha * exp(lambda n) in the quaternion realization. Tangents of
/// the result are recovered numerically from the new positions, so the
/// output is a raw curve ready for reparametrize_arclength.
inline CurveSamples construct_partner_positions(const CurveSamples& curve, const FrenetData& fd,
                                                double lambda) {
  const size_t n = curve.size();
  if (!curve.has_positions())
    throw MissingPositions("construct_partner_positions: input curve carries no positions");
  if (fd.size() != n) throw GridMismatch("construct_partner_positions: Frenet data grid mismatch");

  CurveSamples beta;
  beta.algebra = curve.algebra;
  beta.realization = curve.realization;
  beta.s = curve.s;
  if (curve.realization == Realization::euclidean) {
    beta.pos3.resize(n);
    for (size_t i = 0; i < n; ++i) beta.pos3[i] = curve.pos3[i] + lambda * fd.N[i];
  } else {
    beta.posq.resize(n);
    for (size_t i = 0; i < n; ++i) beta.posq[i] = (curve.posq[i] * quat_exp(lambda * fd.N[i])).normalized();
  }
  beta.tangent = tangents_from_positions(beta);
  return beta;
}

/// Inverse construction: alpha = beta offset by mu along beta's binormal.
/// In the abelian realization the tangent of the result follows from the
/// component frame equations, d(beta + mu B)/ds = T - mu (tau - tau_G) N,
/// which avoids re-differentiating the offset positions. The quaternion
/// realization recovers tangents numerically from the offset positions.
inline CurveSamples construct_inverse_partner(const CurveSamples& beta, const FrenetData& fd_beta,
                                              double mu) {
  const size_t n = beta.size();
  if (!beta.has_positions())
    throw MissingPositions("construct_inverse_partner: input curve carries no positions");
  if (fd_beta.size() != n) throw GridMismatch("construct_inverse_partner: Frenet data grid mismatch");

  CurveSamples alpha;
  alpha.algebra = beta.algebra;
  alpha.realization = beta.realization;
  alpha.s = beta.s;
  if (beta.realization == Realization::euclidean) {
    alpha.pos3.resize(n);
    alpha.tangent.resize(n);
    for (size_t i = 0; i < n; ++i) {
      alpha.pos3[i] = beta.pos3[i] + mu * fd_beta.B[i];
      alpha.tangent[i] = fd_beta.T[i] - mu * (fd_beta.tau[i] - fd_beta.tau_G[i]) * fd_beta.N[i];
    }
  } else {
    alpha.posq.resize(n);
    for (size_t i = 0; i < n; ++i)
      alpha.posq[i] = (beta.posq[i] * quat_exp(mu * fd_beta.B[i])).normalized();
    alpha.tangent = tangents_from_positions(alpha);
  }
  return alpha;
}

struct DistanceReport {
  std::vector<double> distance;
  double median = 0.0;
  double max_deviation = 0.0;  // max |d - median d|
};

/// Per-sample distance between corresponding points: Euclidean in the
/// abelian realization, geodesic in the quaternion realization.
inline DistanceReport constant_distance_check(const CurveSamples& a, const CurveSamples& b) {
  const size_t n = a.size();
  if (b.size() != n) throw GridMismatch("constant_distance_check: sample counts differ");
  for (size_t i = 0; i < n; ++i)
    if (std::abs(a.s[i] - b.s[i]) > 1e-12 * (1.0 + std::abs(a.s[i])))
      throw GridMismatch("constant_distance_check: parameter grids differ at index " + std::to_string(i));
  if (!a.has_positions() || !b.has_positions())
    throw MissingPositions("constant_distance_check: both curves need positions");
  if (a.realization != b.realization)
    throw GridMismatch("constant_distance_check: realizations differ");

  DistanceReport rep;
  rep.distance.resize(n);
  for (size_t i = 0; i < n; ++i)
    rep.distance[i] = (a.realization == Realization::euclidean)
                          ? norm(a.pos3[i] - b.pos3[i])
                          : geodesic_distance(a.posq[i], b.posq[i]);
  rep.median = median_of(rep.distance);
  for (const double d : rep.distance) rep.max_deviation = std::max(rep.max_deviation, std::abs(d - rep.median));
  return rep;
}

/// Residuals of the partner-side characterization
///   d(kappa_beta H_beta)/ds_bar = (kappa_beta / mu)(1 + mu^2 kappa_beta^2 H_beta^2).
struct BetaSideReport {
  double mu = 0.0;                       // supplied or fitted
  bool mu_fitted = false;
  std::vector<double> mu_track;          // per-sample root of the mu quadratic, fitted branch
  double mu_constancy_deviation = 0.0;
  std::vector<double> residual;
  double max_residual = 0.0;             // over interior samples
  double scale = 1.0;                    // 1 + max interior |d(kb Hb)/ds_bar|
  bool qualifies = false;
  std::string note;
};

/// Check the partner-side relation on tracks given over the partner arc
/// length. When mu is not supplied it is fitted: per sample the relation is
/// a quadratic in mu, and the root branch that stays most nearly constant
/// is selected (the relation holds with one constant root when the tracks
/// come from a genuine Mannheim pair).
inline BetaSideReport beta_side_check(std::span<const double> s_bar, std::span<const double> kappa_beta,
                                      std::span<const double> H_beta, std::optional<double> mu_in,
                                      size_t margin = 2, double tol_const = 1e-4) {
  const size_t n = s_bar.size();
  if (kappa_beta.size() != n || H_beta.size() != n)
    throw GridMismatch("beta_side_check: track lengths do not match the grid");
  if (mu_in && *mu_in == 0.0) throw MuZero("beta_side_check: mu must be nonzero");

  std::vector<double> kbHb(n);
  for (size_t i = 0; i < n; ++i) kbHb[i] = kappa_beta[i] * H_beta[i];
  const auto dkbHb = fd::derivative(s_bar, kbHb);

  BetaSideReport rep;
  const size_t lo = margin, hi = n > 2 * margin ? n - margin : margin;

  for (size_t i = lo; i < hi; ++i) rep.scale = std::max(rep.scale, 1.0 + std::abs(dkbHb[i]));

  auto residual_at = [&](double mu, size_t i) {
    const double kb = kappa_beta[i], Hb = H_beta[i];
    return dkbHb[i] - (kb / mu) * (1.0 + mu * mu * kb * kb * Hb * Hb);
  };

  if (mu_in) {
    rep.mu = *mu_in;
  } else {
    // Per-sample roots of (kb^3 Hb^2) mu^2 - (d(kb Hb)/ds_bar) mu + kb = 0.
    std::vector<std::pair<double, double>> roots(n, {std::nan(""), std::nan("")});
    std::vector<double> candidates;
    for (size_t i = lo; i < hi; ++i) {
      const double A = kappa_beta[i] * kappa_beta[i] * kappa_beta[i] * H_beta[i] * H_beta[i];
      const double y = dkbHb[i], C = kappa_beta[i];
      if (std::abs(A) < 1e-300) {
        if (std::abs(y) > 1e-300) roots[i] = {C / y, C / y};  // linear case
        continue;
      }
      const double disc = y * y - 4.0 * A * C;
      if (disc < 0.0) continue;
      const double sq = std::sqrt(disc);
      // numerically stable roots of A mu^2 - y mu + C
      const double q = 0.5 * (y + (y >= 0.0 ? sq : -sq));
      const double r1 = q / A;
      const double r2 = (q != 0.0) ? C / q : r1;
      roots[i] = {r1, r2};
      candidates.push_back(r1);
      candidates.push_back(r2);
    }
    if (candidates.empty()) throw MuZero("beta_side_check: no real mu root anywhere; tracks inconsistent");

    // Thin the candidate list, then pick the value whose nearest-root track
    // deviates least from its own median.
    std::vector<double> probe;
    const size_t step = std::max<size_t>(1, candidates.size() / 256);
    for (size_t i = 0; i < candidates.size(); i += step) probe.push_back(candidates[i]);
    double best_dev = std::numeric_limits<double>::infinity();
    double best_mu = candidates.front();
    std::vector<double> track;
    for (const double cand : probe) {
      track.clear();
      for (size_t i = lo; i < hi; ++i) {
        if (std::isnan(roots[i].first)) continue;
        const double d1 = std::abs(roots[i].first - cand), d2 = std::abs(roots[i].second - cand);
        track.push_back(d1 <= d2 ? roots[i].first : roots[i].second);
      }
      if (track.empty()) continue;
      const double med = median_of(track);
      double dev = 0.0;
      for (const double x : track) dev = std::max(dev, std::abs(x - med));
      dev /= 1.0 + std::abs(med);
      if (dev < best_dev) { best_dev = dev; best_mu = med; }
    }
    rep.mu = best_mu;
    rep.mu_fitted = true;
    rep.mu_track.assign(n, std::nan(""));
    for (size_t i = lo; i < hi; ++i) {
      if (std::isnan(roots[i].first)) continue;
      const double d1 = std::abs(roots[i].first - best_mu), d2 = std::abs(roots[i].second - best_mu);
      rep.mu_track[i] = d1 <= d2 ? roots[i].first : roots[i].second;
    }
    rep.mu_constancy_deviation = best_dev;
    if (rep.mu == 0.0) throw MuZero("beta_side_check: fitted mu is zero");
  }

  rep.residual.resize(n, 0.0);
  for (size_t i = 0; i < n; ++i) rep.residual[i] = residual_at(rep.mu, i);
  for (size_t i = lo; i < hi; ++i) rep.max_residual = std::max(rep.max_residual, std::abs(rep.residual[i]));
  rep.qualifies = rep.max_residual <= tol_const * rep.scale;
  rep.note = "relation read as d(kappa_beta H_beta)/ds_bar - (kappa_beta/mu)(1 + mu^2 kappa_beta^2 H_beta^2) = 0";
  return rep;
}

}  // namespace liecurve
