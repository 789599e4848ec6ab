#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "liecurve/curve.hpp"

namespace liecurve {

struct FrenetOptions {
  // kappa floor below which the frame is declared undefined. Negative means
  // auto: 1e-6 scaled by the inverse curve length.
  double kappa_min = -1.0;
  double tol_unit = 1e-8;      // allowed deviation of |T| from 1
  double frame_tol = 1e-4;     // orthonormality residual for DegenerateFrame
  double grid_tol = 1e-8;      // relative nonuniformity allowed in the grid
  int interior_margin = 2;
};

/// Covariant derivative of a vector field W along the curve: the
/// componentwise derivative plus the bracket correction (1/2)[T, W].
inline std::vector<Vec3> covariant_derivative_along(std::span<const Vec3> W,
                                                    const CurveSamples& curve) {
  const size_t n = curve.size();
  if (W.size() != n) throw GridMismatch("covariant_derivative_along: field not sampled on the curve grid");
  auto out = fd::derivative(curve.s, W);
  for (size_t i = 0; i < n; ++i) out[i] += 0.5 * curve.algebra.bracket(curve.tangent[i], W[i]);
  return out;
}

/// Per-sample group torsion tau_G = (1/2)<[T,N],B>.
inline std::vector<double> lie_torsion(std::span<const Vec3> T, std::span<const Vec3> N,
                                       std::span<const Vec3> B, const LieAlgebra3& g) {
  std::vector<double> out(T.size());
  for (size_t i = 0; i < T.size(); ++i) out[i] = 0.5 * dot(g.bracket(T[i], N[i]), B[i]);
  return out;
}

namespace detail {

inline void check_uniform_grid(std::span<const double> s, double tol) {
  const size_t n = s.size();
  const double h = (s.back() - s.front()) / static_cast<double>(n - 1);
  for (size_t i = 0; i + 1 < n; ++i)
    if (std::abs((s[i + 1] - s[i]) - h) > tol * (1.0 + std::abs(h)))
      throw GridMismatch("expected a uniform arc-length grid; spacing deviates at index " + std::to_string(i));
}

}  // namespace detail

/// Frenet apparatus of an arc-length-parametrized sampled curve.
///
/// T is taken from the samples; kappa = |dT/ds|, N = (dT/ds)/kappa,
/// B = T x N with the algebra's orientation. tau comes from the component
/// form of the frame equations, <dN/ds, B> + tau_G, which avoids
/// differentiating B. H = (tau - tau_G)/kappa, H' by differentiating the H
/// track, sigma_N = kappa (1+H^2)^{3/2} / H' (NaN where H' vanishes).
inline FrenetData frenet_apparatus(const CurveSamples& curve, const FrenetOptions& opt = {}) {
  const size_t n = curve.size();
  if (n < 8) throw TooFewSamples("frenet_apparatus: need >= 8 samples");
  detail::check_uniform_grid(curve.s, opt.grid_tol);
  for (size_t i = 0; i < n; ++i)
    if (std::abs(norm(curve.tangent[i]) - 1.0) > opt.tol_unit)
      throw GridMismatch("frenet_apparatus: tangent not unit length at s = " + std::to_string(curve.s[i]) +
                         " (reparametrize first)");

  const double length = curve.s.back() - curve.s.front();
  const double kappa_min = opt.kappa_min >= 0.0 ? opt.kappa_min : 1e-6 / length;

  FrenetData fd;
  fd.algebra = curve.algebra;
  fd.s = curve.s;
  fd.T = curve.tangent;
  fd.interior_margin = opt.interior_margin;

  const auto Tdot = fd::derivative(curve.s, std::span<const Vec3>(fd.T));
  fd.kappa.resize(n);
  fd.N.resize(n);
  fd.B.resize(n);
  for (size_t i = 0; i < n; ++i) {
    fd.kappa[i] = norm(Tdot[i]);
    if (fd.kappa[i] < kappa_min)
      throw VanishingCurvature("frenet_apparatus: kappa = " + std::to_string(fd.kappa[i]) +
                               " < kappa_min at s = " + std::to_string(curve.s[i]) +
                               "; the frame is undefined there");
    fd.N[i] = Tdot[i] / fd.kappa[i];
    fd.B[i] = cross(fd.T[i], fd.N[i], curve.algebra.orientation);
  }

  // orthonormality residual of the constructed frame
  double worst = 0.0;
  for (size_t i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(dot(fd.T[i], fd.N[i])));
    worst = std::max(worst, std::abs(dot(fd.T[i], fd.B[i])));
    worst = std::max(worst, std::abs(dot(fd.N[i], fd.B[i])));
    worst = std::max(worst, std::abs(norm(fd.N[i]) - 1.0));
    worst = std::max(worst, std::abs(norm(fd.B[i]) - 1.0));
  }
  if (worst > opt.frame_tol)
    throw DegenerateFrame("frenet_apparatus: orthonormality residual " + std::to_string(worst));

  fd.tau_G = lie_torsion(fd.T, fd.N, fd.B, curve.algebra);

  const auto Ndot = fd::derivative(curve.s, std::span<const Vec3>(fd.N));
  fd.tau.resize(n);
  fd.H.resize(n);
  for (size_t i = 0; i < n; ++i) {
    fd.tau[i] = dot(Ndot[i], fd.B[i]) + fd.tau_G[i];
    fd.H[i] = (fd.tau[i] - fd.tau_G[i]) / fd.kappa[i];
  }

  fd.H_prime = fd::derivative(curve.s, fd.H);
  fd.sigma_N.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const double hp = fd.H_prime[i];
    const double num = fd.kappa[i] * std::pow(1.0 + fd.H[i] * fd.H[i], 1.5);
    fd.sigma_N[i] = (hp == 0.0) ? std::numeric_limits<double>::quiet_NaN() : num / hp;
  }
  return fd;
}

/// Cross-check torsion route: tau = <-dB/ds, N> + tau_G. Used by the
/// verification suite against the primary <dN/ds, B> + tau_G route.
inline std::vector<double> torsion_via_binormal(const FrenetData& fd) {
  const auto Bdot = fd::derivative(fd.s, std::span<const Vec3>(fd.B));
  std::vector<double> out(fd.size());
  for (size_t i = 0; i < fd.size(); ++i) out[i] = -dot(Bdot[i], fd.N[i]) + fd.tau_G[i];
  return out;
}

struct BracketFrameReport {
  std::vector<double> residual_TN;  // |[T,N] - 2 tau_G B|
  std::vector<double> residual_TB;  // |[T,B] + 2 tau_G N|
  double max_TN = 0.0;
  double max_TB = 0.0;
};

/// Residuals of the bracket-frame identities [T,N] = 2 tau_G B and
/// [T,B] = -2 tau_G N.
inline BracketFrameReport bracket_frame_identities(const FrenetData& fd) {
  BracketFrameReport rep;
  const size_t n = fd.size();
  rep.residual_TN.resize(n);
  rep.residual_TB.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const Vec3 tn = fd.algebra.bracket(fd.T[i], fd.N[i]) - 2.0 * fd.tau_G[i] * fd.B[i];
    const Vec3 tb = fd.algebra.bracket(fd.T[i], fd.B[i]) + 2.0 * fd.tau_G[i] * fd.N[i];
    rep.residual_TN[i] = norm(tn);
    rep.residual_TB[i] = norm(tb);
    rep.max_TN = std::max(rep.max_TN, rep.residual_TN[i]);
    rep.max_TB = std::max(rep.max_TB, rep.residual_TB[i]);
  }
  return rep;
}

/// Max Gram-matrix deviation of (T,N,B) from the identity, and the largest
/// deviation of det(T,N,B) from the algebra orientation.
struct FrameOrthonormality {
  double max_gram = 0.0;
  double max_det = 0.0;
};

inline FrameOrthonormality frame_orthonormality(const FrenetData& fd) {
  FrameOrthonormality r;
  for (size_t i = 0; i < fd.size(); ++i) {
    const Vec3& t = fd.T[i];
    const Vec3& nn = fd.N[i];
    const Vec3& b = fd.B[i];
    r.max_gram = std::max({r.max_gram, std::abs(dot(t, t) - 1.0), std::abs(dot(nn, nn) - 1.0),
                           std::abs(dot(b, b) - 1.0), std::abs(dot(t, nn)), std::abs(dot(t, b)),
                           std::abs(dot(nn, b))});
    const double det = dot(t, cross_std(nn, b));
    r.max_det = std::max(r.max_det, std::abs(det - fd.algebra.orientation));
  }
  return r;
}

}  // namespace liecurve
