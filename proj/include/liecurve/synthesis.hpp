#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "liecurve/curve.hpp"
#include "liecurve/frenet.hpp"

namespace liecurve {

/// Prescribed curvature data for frame integration. tau_G is fixed by the
/// algebra and the initial frame; the component frame system is
///   dT/ds = kappa N,  dN/ds = -kappa T + (tau - tau_G) B,  dB/ds = -(tau - tau_G) N.
struct CurvatureSpec {
  LieAlgebra3 algebra;
  std::function<double(double)> kappa;
  std::function<double(double)> tau;
  double s0 = 0.0, s1 = 1.0;
  double h = 1e-3;
  std::array<Vec3, 3> frame0 = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
  Vec3 pos0 = {0, 0, 0};
  Quat q0 = Quat::identity();
  Realization realization = Realization::none;
};

struct SynthesizedCurve {
  CurveSamples curve;
  FrenetData frenet;  // integrated frames plus the prescribed scalar tracks
  double tau_G = 0.0;
  double max_renorm_drift = 0.0;
  double max_quat_drift = 0.0;
};

namespace detail {

struct FrameState {
  Vec3 T, N, B;
  Vec3 x;
  Quat q;
};

inline FrameState frame_axpy(const FrameState& a, double c, const FrameState& d, bool quat) {
  FrameState out;
  out.T = a.T + c * d.T;
  out.N = a.N + c * d.N;
  out.B = a.B + c * d.B;
  out.x = a.x + c * d.x;
  if (quat) out.q = a.q + c * d.q;
  return out;
}

}  // namespace detail

/// Integrate the component frame system with classical RK4 and per-step
/// Gram-Schmidt renormalization anchored at T. Positions integrate alongside:
/// dx/ds = T in the abelian realization, dq/ds = q * T in the quaternion one.
inline SynthesizedCurve integrate_frame(const CurvatureSpec& spec) {
  const double span = spec.s1 - spec.s0;
  if (!(span > 0.0) || !(spec.h > 0.0))
    throw ConditionViolated("integrate_frame: need s1 > s0 and h > 0");
  const size_t n = static_cast<size_t>(std::llround(span / spec.h)) + 1;
  if (n < 8) throw TooFewSamples("integrate_frame: range/h gives fewer than 8 samples");
  const double h = span / static_cast<double>(n - 1);

  const bool quat = spec.realization == Realization::unit_quaternion;
  const bool eucl = spec.realization == Realization::euclidean;
  if (eucl && !spec.algebra.is_abelian())
    throw ConditionViolated("integrate_frame: euclidean positions are only valid for the abelian algebra");

  // tau_G is frame-independent for a bi-invariant 3D algebra; evaluate it on
  // the initial frame.
  const Vec3 B0 = cross(spec.frame0[0], spec.frame0[1], spec.algebra.orientation);
  const double tau_G = 0.5 * dot(spec.algebra.bracket(spec.frame0[0], spec.frame0[1]), B0);

  auto kap = [&](double s) {
    const double k = spec.kappa(s);
    if (!(k > 0.0))
      throw NonPositiveKappa("integrate_frame: kappa(s) = " + std::to_string(k) +
                             " at s = " + std::to_string(s));
    return k;
  };
  auto deriv = [&](double s, const detail::FrameState& y) {
    detail::FrameState d;
    const double k = kap(s);
    const double te = spec.tau(s) - tau_G;  // effective component torsion
    d.T = k * y.N;
    d.N = -1.0 * k * y.T + te * y.B;
    d.B = -te * y.N;
    d.x = y.T;
    if (quat) d.q = y.q * Quat::pure(y.T);
    return d;
  };

  detail::FrameState y;
  y.T = spec.frame0[0];
  y.N = spec.frame0[1];
  y.B = cross(spec.frame0[0], spec.frame0[1], spec.algebra.orientation);
  y.x = spec.pos0;
  y.q = spec.q0;

  SynthesizedCurve out;
  out.tau_G = tau_G;
  CurveSamples& c = out.curve;
  c.algebra = spec.algebra;
  c.realization = spec.realization;
  c.s.resize(n);
  c.tangent.resize(n);
  if (eucl) c.pos3.resize(n);
  if (quat) c.posq.resize(n);

  FrenetData& fdat = out.frenet;
  fdat.algebra = spec.algebra;
  fdat.s.resize(n);
  fdat.T.resize(n);
  fdat.N.resize(n);
  fdat.B.resize(n);
  fdat.kappa.resize(n);
  fdat.tau.resize(n);
  fdat.tau_G.assign(n, tau_G);
  fdat.H.resize(n);

  for (size_t i = 0; i < n; ++i) {
    const double s = spec.s0 + h * static_cast<double>(i);
    c.s[i] = s;
    fdat.s[i] = s;
    c.tangent[i] = y.T;
    fdat.T[i] = y.T;
    fdat.N[i] = y.N;
    fdat.B[i] = y.B;
    fdat.kappa[i] = kap(s);
    fdat.tau[i] = spec.tau(s);
    fdat.H[i] = (fdat.tau[i] - tau_G) / fdat.kappa[i];
    if (eucl) c.pos3[i] = y.x;
    if (quat) c.posq[i] = y.q;
    if (i + 1 == n) break;

    const auto k1 = deriv(s, y);
    const auto k2 = deriv(s + 0.5 * h, detail::frame_axpy(y, 0.5 * h, k1, quat));
    const auto k3 = deriv(s + 0.5 * h, detail::frame_axpy(y, 0.5 * h, k2, quat));
    const auto k4 = deriv(s + h, detail::frame_axpy(y, h, k3, quat));
    detail::FrameState yn = y;
    const double w = h / 6.0;
    yn.T = y.T + w * (k1.T + 2.0 * k2.T + 2.0 * k3.T + k4.T);
    yn.N = y.N + w * (k1.N + 2.0 * k2.N + 2.0 * k3.N + k4.N);
    yn.B = y.B + w * (k1.B + 2.0 * k2.B + 2.0 * k3.B + k4.B);
    yn.x = y.x + w * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    if (quat) yn.q = y.q + w * (k1.q + 2.0 * (k2.q + k3.q) + k4.q);

    // Gram-Schmidt anchored at T
    const Vec3 Tn = normalized(yn.T);
    Vec3 Nn = yn.N - dot(yn.N, Tn) * Tn;
    Nn = normalized(Nn);
    const Vec3 Bn = cross(Tn, Nn, spec.algebra.orientation);
    const double drift = std::max({norm(Tn - yn.T), norm(Nn - yn.N), norm(Bn - yn.B)});
    out.max_renorm_drift = std::max(out.max_renorm_drift, drift);
    if (drift > 1e-6)
      throw StepTooLarge("integrate_frame: renormalization drift " + std::to_string(drift) +
                         " per step at s = " + std::to_string(s) + "; reduce h");
    yn.T = Tn;
    yn.N = Nn;
    yn.B = Bn;
    if (quat) {
      const double qn = yn.q.norm();
      out.max_quat_drift = std::max(out.max_quat_drift, std::abs(qn - 1.0));
      yn.q = yn.q.normalized();
    }
    y = yn;
  }

  // derived tracks from the prescribed data
  fdat.H_prime = fd::derivative(fdat.s, fdat.H);
  fdat.sigma_N.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const double hp = fdat.H_prime[i];
    const double num = fdat.kappa[i] * std::pow(1.0 + fdat.H[i] * fdat.H[i], 1.5);
    fdat.sigma_N[i] = (hp == 0.0) ? std::numeric_limits<double>::quiet_NaN() : num / hp;
  }
  return out;
}

/// Invert the Mannheim condition: given kappa with 0 < lambda kappa < 1, set
/// H = +sqrt(1/(lambda kappa) - 1) and tau = kappa H + tau_G. The negative-H
/// branch is the mirror B -> -B and is not generated.
inline CurvatureSpec generate_mannheim_family(double lambda, std::function<double(double)> kappa,
                                              const LieAlgebra3& algebra, double s0, double s1,
                                              double h) {
  CurvatureSpec spec;
  spec.algebra = algebra;
  spec.s0 = s0;
  spec.s1 = s1;
  spec.h = h;
  if (algebra.is_abelian()) spec.realization = Realization::euclidean;
  else if (algebra.name == "su2") spec.realization = Realization::unit_quaternion;

  const Vec3 B0 = cross(spec.frame0[0], spec.frame0[1], algebra.orientation);
  const double tau_G = 0.5 * dot(algebra.bracket(spec.frame0[0], spec.frame0[1]), B0);

  // validate on every point the integrator will evaluate
  const size_t n = static_cast<size_t>(std::llround((s1 - s0) / h)) + 1;
  for (size_t i = 0; i + 1 < 2 * n; ++i) {
    const double s = s0 + 0.5 * h * static_cast<double>(i);
    const double lk = lambda * kappa(s);
    if (!(lk > 0.0))
      throw ConditionViolated("generate_mannheim_family: lambda*kappa <= 0 at s = " + std::to_string(s));
    if (lk >= 1.0)
      throw ConditionViolated("generate_mannheim_family: lambda*kappa = " + std::to_string(lk) +
                              " >= 1 at s = " + std::to_string(s) + " (H would vanish or be imaginary)");
  }

  spec.kappa = kappa;
  spec.tau = [lambda, kappa, tau_G](double s) {
    const double k = kappa(s);
    const double H = std::sqrt(1.0 / (lambda * k) - 1.0);
    return k * H + tau_G;
  };
  return spec;
}

/// The slant Mannheim family: H from the generator pair (a, b) and
/// kappa = 1 / (lambda (1 + H^2)), which satisfies the Mannheim condition by
/// construction. The range must avoid the single zero of H at s = -ln(a)/b.
inline CurvatureSpec generate_slant_mannheim(double a, double b, double lambda,
                                             const LieAlgebra3& algebra, double s0, double s1,
                                             double h, double h_min = 1e-4) {
  if (a == 0.0 || b == 0.0) throw ZeroParameter("generate_slant_mannheim: a and b must be nonzero");
  if (!(lambda > 0.0)) throw ConditionViolated("generate_slant_mannheim: lambda must be positive");

  auto Hf = [a, b](double s) { return 0.5 * (a * std::exp(b * s) - std::exp(-b * s) / a); };
  // the family has a single zero at s* = -ln|a|/b
  const double s_star = -std::log(std::abs(a)) / b;
  if (s_star >= s0 && s_star <= s1)
    throw RangeContainsHZero("generate_slant_mannheim: H vanishes at s = " + std::to_string(s_star) +
                             " inside [" + std::to_string(s0) + ", " + std::to_string(s1) + "]");
  const size_t n = static_cast<size_t>(std::llround((s1 - s0) / h)) + 1;
  for (size_t i = 0; i + 1 < 2 * n; ++i) {
    const double s = s0 + 0.5 * h * static_cast<double>(i);
    if (std::abs(Hf(s)) < h_min)
      throw RangeContainsHZero("generate_slant_mannheim: |H| < " + std::to_string(h_min) +
                               " at s = " + std::to_string(s) +
                               " (H vanishes at s = " + std::to_string(s_star) + ")");
  }

  CurvatureSpec spec;
  spec.algebra = algebra;
  spec.s0 = s0;
  spec.s1 = s1;
  spec.h = h;
  if (algebra.is_abelian()) spec.realization = Realization::euclidean;
  else if (algebra.name == "su2") spec.realization = Realization::unit_quaternion;

  const Vec3 B0 = cross(spec.frame0[0], spec.frame0[1], algebra.orientation);
  const double tau_G = 0.5 * dot(algebra.bracket(spec.frame0[0], spec.frame0[1]), B0);

  spec.kappa = [lambda, Hf](double s) {
    const double H = Hf(s);
    return 1.0 / (lambda * (1.0 + H * H));
  };
  spec.tau = [lambda, Hf, tau_G](double s) {
    const double H = Hf(s);
    return H / (lambda * (1.0 + H * H)) + tau_G;
  };
  return spec;
}

/// Constant-curvature spec (circular helix in the abelian group; for
/// nonabelian presets the analogous constant-(kappa, tau) curve).
inline CurvatureSpec generate_helix(double kappa, double tau, const LieAlgebra3& algebra,
                                    double s0, double s1, double h) {
  if (!(kappa > 0.0)) throw NonPositiveKappa("generate_helix: kappa must be positive");
  CurvatureSpec spec;
  spec.algebra = algebra;
  spec.s0 = s0;
  spec.s1 = s1;
  spec.h = h;
  if (algebra.is_abelian()) spec.realization = Realization::euclidean;
  else if (algebra.name == "su2") spec.realization = Realization::unit_quaternion;
  spec.kappa = [kappa](double) { return kappa; };
  spec.tau = [tau](double) { return tau; };
  return spec;
}

}  // namespace liecurve
