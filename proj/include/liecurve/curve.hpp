#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "liecurve/algebra.hpp"
#include "liecurve/errors.hpp"
#include "liecurve/finite_difference.hpp"
#include "liecurve/quaternion.hpp"

namespace liecurve {

/// How group elements are represented when positions are carried along:
/// 3-vectors for the abelian group, unit quaternions for su2. Frame-level
/// computations never need positions.
enum class Realization { none, euclidean, unit_quaternion };

/// A sampled curve in the group: parameter grid, left-translated tangent
/// components in the algebra, optional positions. After
/// reparametrize_arclength the grid is uniform in arc length and tangents
/// are unit.
struct CurveSamples {
  LieAlgebra3 algebra;
  std::vector<double> s;
  std::vector<Vec3> tangent;
  Realization realization = Realization::none;
  std::vector<Vec3> pos3;   // populated iff realization == euclidean
  std::vector<Quat> posq;   // populated iff realization == unit_quaternion
  // After reparametrization: the original parameter value of each output
  // sample, for aligning derived curves with their source.
  std::vector<double> source_param;

  size_t size() const { return s.size(); }
  bool has_positions() const { return realization != Realization::none; }
};

/// The Frenet apparatus of a sampled curve plus the scalar tracks derived
/// from it. Frames are algebra vectors; tau_G is the bracket contribution
/// (1/2)<[T,N],B>; H = (tau - tau_G)/kappa.
struct FrenetData {
  LieAlgebra3 algebra;
  std::vector<double> s;
  std::vector<Vec3> T, N, B;
  std::vector<double> kappa, tau, tau_G, H, H_prime, sigma_N;
  // Samples within `interior_margin` of either end carry one-sided stencil
  // error and are excluded from constancy verdicts.
  int interior_margin = 2;

  size_t size() const { return s.size(); }
  size_t interior_begin() const { return static_cast<size_t>(interior_margin); }
  size_t interior_end() const {
    return size() > 2 * static_cast<size_t>(interior_margin)
               ? size() - static_cast<size_t>(interior_margin)
               : interior_begin();
  }
};

struct ConstancyResult {
  double median = 0.0;
  double max_deviation = 0.0;  // max |x - median| / (1 + |median|)
  bool passes = false;
};

inline double median_of(std::span<const double> xs) {
  std::vector<double> tmp(xs.begin(), xs.end());
  const size_t m = tmp.size() / 2;
  std::nth_element(tmp.begin(), tmp.begin() + static_cast<long>(m), tmp.end());
  double med = tmp[m];
  if (tmp.size() % 2 == 0) {
    std::nth_element(tmp.begin(), tmp.begin() + static_cast<long>(m) - 1, tmp.end());
    med = 0.5 * (med + tmp[m - 1]);
  }
  return med;
}

/// Scale-aware uniform-deviation test: a track counts as constant when
/// max |x - median| <= tol * (1 + |median|) over the interior samples.
inline ConstancyResult constancy_test(std::span<const double> track, size_t margin,
                                      double tol = 1e-4) {
  ConstancyResult r;
  if (track.size() <= 2 * margin) return r;
  const auto interior = track.subspan(margin, track.size() - 2 * margin);
  r.median = median_of(interior);
  double dev = 0.0;
  for (const double x : interior) dev = std::max(dev, std::abs(x - r.median));
  r.max_deviation = dev / (1.0 + std::abs(r.median));
  r.passes = r.max_deviation <= tol;
  return r;
}

namespace detail {

/// Invert the cumulative-length map: find t with L(t) = target, where L is
/// the 4th-order cumulative integral of `speed` over grid `t_grid` and
/// L(t_grid[i]) = L_nodes[i]. Newton on the local quadrature, bisection
/// fallback.
inline double invert_arclength(std::span<const double> t_grid, std::span<const double> speed,
                               std::span<const double> L_nodes, double target) {
  const size_t i = fd::locate(L_nodes, target);
  double lo = t_grid[i], hi = t_grid[i + 1];
  const double Li = L_nodes[i];
  auto seg_len = [&](double t) {
    return fd::integrate_cell(t_grid, speed, i, t_grid[i], t);
  };
  const double denom = L_nodes[i + 1] - Li;
  double t = denom > 0.0 ? lo + (hi - lo) * (target - Li) / denom : lo;
  for (int it = 0; it < 40; ++it) {
    const double f = Li + seg_len(t) - target;
    if (f > 0.0) hi = t;
    else lo = t;
    const double v = fd::interpolate(t_grid, speed, t, i);
    double step = v > 0.0 ? f / v : 0.0;
    double tn = t - step;
    if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
    if (std::abs(tn - t) <= 1e-15 * (1.0 + std::abs(t))) { t = tn; break; }
    t = tn;
  }
  return t;
}

}  // namespace detail

/// Resample a curve to a uniform arc-length grid with unit tangents. The
/// output keeps the sample count and starts at the input's first parameter
/// value; total length is preserved by construction. Idempotent on curves
/// that are already unit-speed on a uniform grid.
inline CurveSamples reparametrize_arclength(const CurveSamples& raw) {
  const size_t n = raw.size();
  if (n < 8) throw TooFewSamples("reparametrize_arclength: need >= 8 samples, got " + std::to_string(n));
  if (raw.tangent.size() != n)
    throw GridMismatch("reparametrize_arclength: tangent track length mismatch");
  for (size_t i = 0; i + 1 < n; ++i)
    if (!(raw.s[i] < raw.s[i + 1]))
      throw NonMonotoneParameter("reparametrize_arclength: parameter grid not strictly increasing at index " +
                                 std::to_string(i));

  std::vector<double> speed(n);
  for (size_t i = 0; i < n; ++i) {
    speed[i] = norm(raw.tangent[i]);
    if (!(speed[i] > 0.0))
      throw NonMonotoneParameter("reparametrize_arclength: zero-speed sample at s = " + std::to_string(raw.s[i]));
  }
  const auto L = fd::cumulative_integral(raw.s, speed);
  const double total = L.back();

  CurveSamples out;
  out.algebra = raw.algebra;
  out.realization = raw.realization;
  out.s.resize(n);
  out.tangent.resize(n);
  out.source_param.resize(n);
  if (raw.realization == Realization::euclidean) out.pos3.resize(n);
  if (raw.realization == Realization::unit_quaternion) out.posq.resize(n);

  std::vector<std::vector<double>> qcomp;
  if (raw.realization == Realization::unit_quaternion) {
    qcomp.assign(4, std::vector<double>(n));
    for (size_t i = 0; i < n; ++i) {
      qcomp[0][i] = raw.posq[i].w;
      qcomp[1][i] = raw.posq[i].x;
      qcomp[2][i] = raw.posq[i].y;
      qcomp[3][i] = raw.posq[i].z;
    }
  }

  const double h = total / static_cast<double>(n - 1);
  const double s0 = raw.s.front();
  for (size_t j = 0; j < n; ++j) {
    const double target = (j == n - 1) ? total : h * static_cast<double>(j);
    const double t = (j == 0) ? raw.s.front() : (j == n - 1 ? raw.s.back()
                     : detail::invert_arclength(raw.s, speed, L, target));
    out.s[j] = s0 + target;
    out.source_param[j] = t;
    const size_t hint = fd::locate(raw.s, t);
    out.tangent[j] = normalized(fd::interpolate(raw.s, std::span<const Vec3>(raw.tangent), t, hint));
    if (raw.realization == Realization::euclidean)
      out.pos3[j] = fd::interpolate(raw.s, std::span<const Vec3>(raw.pos3), t, hint);
    if (raw.realization == Realization::unit_quaternion) {
      const Quat q{fd::interpolate(raw.s, qcomp[0], t, hint), fd::interpolate(raw.s, qcomp[1], t, hint),
                   fd::interpolate(raw.s, qcomp[2], t, hint), fd::interpolate(raw.s, qcomp[3], t, hint)};
      out.posq[j] = q.normalized();
    }
  }
  return out;
}

/// Left-translated tangents recovered numerically from positions: dx/ds in
/// the abelian realization, imag(q^-1 dq/ds) in the quaternion realization.
/// Independent of any analytically known tangent track.
inline std::vector<Vec3> tangents_from_positions(const CurveSamples& curve) {
  const size_t n = curve.size();
  if (!curve.has_positions()) throw MissingPositions("tangents_from_positions: curve carries no positions");
  std::vector<Vec3> out(n);
  if (curve.realization == Realization::euclidean) {
    out = fd::derivative(curve.s, std::span<const Vec3>(curve.pos3));
  } else {
    // differentiate the four components, then pull back by q^-1
    std::vector<double> comp(n), dw(n);
    std::vector<Quat> dq(n);
    for (int c = 0; c < 4; ++c) {
      for (size_t i = 0; i < n; ++i) {
        const Quat& qi = curve.posq[i];
        comp[i] = (c == 0) ? qi.w : (c == 1 ? qi.x : (c == 2 ? qi.y : qi.z));
      }
      const auto d = fd::derivative(curve.s, comp);
      for (size_t i = 0; i < n; ++i) {
        Quat& o = dq[i];
        (c == 0 ? o.w : (c == 1 ? o.x : (c == 2 ? o.y : o.z))) = d[i];
      }
    }
    for (size_t i = 0; i < n; ++i) out[i] = (curve.posq[i].conjugate() * dq[i]).imag();
  }
  return out;
}

}  // namespace liecurve
