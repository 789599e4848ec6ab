#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "liecurve/algebra.hpp"
#include "liecurve/errors.hpp"

namespace liecurve::fd {

/// Fornberg weights: coefficients w such that f^(m)(x0) ~= sum_i w[i] f(x[i])
/// for arbitrarily spaced nodes x. Exact for polynomials of degree < x.size().
inline std::vector<double> weights(std::span<const double> x, double x0, int m) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> c(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(m) + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[static_cast<size_t>(i)] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[static_cast<size_t>(i)] - x[static_cast<size_t>(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[static_cast<size_t>(i)][static_cast<size_t>(k)] =
              c1 * (k * c[static_cast<size_t>(i - 1)][static_cast<size_t>(k - 1)] -
                    c5 * c[static_cast<size_t>(i - 1)][static_cast<size_t>(k)]) / c2;
        c[static_cast<size_t>(i)][0] = -c1 * c5 * c[static_cast<size_t>(i - 1)][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[static_cast<size_t>(j)][static_cast<size_t>(k)] =
            (c4 * c[static_cast<size_t>(j)][static_cast<size_t>(k)] -
             k * c[static_cast<size_t>(j)][static_cast<size_t>(k - 1)]) / c3;
      c[static_cast<size_t>(j)][0] = c4 * c[static_cast<size_t>(j)][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<size_t>(i)] = c[static_cast<size_t>(i)][static_cast<size_t>(m)];
  return w;
}

inline size_t window_start(size_t i, size_t n, size_t w) {
  if (n <= w) return 0;
  size_t j0 = (i >= w / 2) ? i - w / 2 : 0;
  if (j0 + w > n) j0 = n - w;
  return j0;
}

/// Per-sample derivative of a scalar track on a (possibly nonuniform) grid.
/// window = 5 gives 4th-order first derivatives everywhere on uniform grids
/// (one-sided stencils at the ends) and 4th-order second derivatives in the
/// interior.
inline std::vector<double> derivative(std::span<const double> s, std::span<const double> y,
                                      int order = 1, size_t window = 5) {
  const size_t n = s.size();
  if (y.size() != n) throw GridMismatch("derivative: track length does not match grid");
  if (n < window) throw TooFewSamples("derivative: need at least " + std::to_string(window) + " samples");
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) {
    const size_t j0 = window_start(i, n, window);
    const auto w = weights(s.subspan(j0, window), s[i], order);
    double acc = 0.0;
    for (size_t k = 0; k < window; ++k) acc += w[k] * y[j0 + k];
    out[i] = acc;
  }
  return out;
}

inline std::vector<Vec3> derivative(std::span<const double> s, std::span<const Vec3> y,
                                    int order = 1, size_t window = 5) {
  const size_t n = s.size();
  if (y.size() != n) throw GridMismatch("derivative: track length does not match grid");
  if (n < window) throw TooFewSamples("derivative: need at least " + std::to_string(window) + " samples");
  std::vector<Vec3> out(n);
  for (size_t i = 0; i < n; ++i) {
    const size_t j0 = window_start(i, n, window);
    const auto w = weights(s.subspan(j0, window), s[i], order);
    Vec3 acc;
    for (size_t k = 0; k < window; ++k) acc += w[k] * y[j0 + k];
    out[i] = acc;
  }
  return out;
}

/// Value of the local 6-point Lagrange interpolant at x. Exact at the nodes.
/// The wide window keeps the piecewise interpolation error small enough that
/// tracks surviving several resample-then-differentiate passes stay clean.
inline double interpolate(std::span<const double> s, std::span<const double> y, double x, size_t i_hint) {
  const size_t n = s.size();
  const size_t w = std::min<size_t>(6, n);
  const size_t j0 = window_start(i_hint, n, w);
  const auto wt = weights(s.subspan(j0, w), x, 0);
  double acc = 0.0;
  for (size_t k = 0; k < w; ++k) acc += wt[k] * y[j0 + k];
  return acc;
}

inline Vec3 interpolate(std::span<const double> s, std::span<const Vec3> y, double x, size_t i_hint) {
  const size_t n = s.size();
  const size_t w = std::min<size_t>(6, n);
  const size_t j0 = window_start(i_hint, n, w);
  const auto wt = weights(s.subspan(j0, w), x, 0);
  Vec3 acc;
  for (size_t k = 0; k < w; ++k) acc += wt[k] * y[j0 + k];
  return acc;
}

/// Locate i with s[i] <= x <= s[i+1] on a strictly increasing grid.
inline size_t locate(std::span<const double> s, double x) {
  const size_t n = s.size();
  if (x <= s[0]) return 0;
  if (x >= s[n - 1]) return n - 2;
  size_t lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    const size_t mid = (lo + hi) / 2;
    if (s[mid] <= x) lo = mid;
    else hi = mid;
  }
  return lo;
}

/// Integral of the local interpolant over [s[i], s[i+1]] by 3-point Gauss
/// (exact for the quintic interpolant).
inline double integrate_cell(std::span<const double> s, std::span<const double> y, size_t i,
                             double a, double b) {
  constexpr double node = 0.38729833462074170;  // sqrt(3/5)/2
  const double mid = 0.5 * (a + b), len = b - a;
  const double f0 = interpolate(s, y, mid, i);
  const double f1 = interpolate(s, y, mid - node * len, i);
  const double f2 = interpolate(s, y, mid + node * len, i);
  return len * ((8.0 / 18.0) * f0 + (5.0 / 18.0) * (f1 + f2));
}

/// Cumulative integral of a sampled function: per-subinterval Gauss rule on
/// the local Lagrange interpolant. Kahan summation keeps the running sum
/// bit-stable for long grids.
inline std::vector<double> cumulative_integral(std::span<const double> s, std::span<const double> y) {
  const size_t n = s.size();
  if (y.size() != n) throw GridMismatch("cumulative_integral: track length does not match grid");
  if (n < 4) throw TooFewSamples("cumulative_integral: need at least 4 samples");
  std::vector<double> out(n);
  out[0] = 0.0;
  double sum = 0.0, comp = 0.0;
  for (size_t i = 0; i + 1 < n; ++i) {
    const double piece = integrate_cell(s, y, i, s[i], s[i + 1]);
    const double t = piece - comp;
    const double next = sum + t;
    comp = (next - sum) - t;
    sum = next;
    out[i + 1] = sum;
  }
  return out;
}

}  // namespace liecurve::fd
