#pragma once

// Partial-wave series of the Bessel beam:
//   Phi = sum_n 2 i^n (n + 1/2) P_n(cos theta) P_n(cos eta) j_n(w r) exp(-i w t).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>

#include "beamkit/beamcore.hpp"
#include "beamkit/specfun.hpp"

namespace beamkit::pwseries {

inline constexpr unsigned kHardCap = 5000;

struct SeriesResult {
  complex value{0.0, 0.0};
  /// Highest order included; the value holds orders 0..n_terms.
  std::size_t n_terms = 0;
  /// Bound on the magnitude of the last two included terms.
  double tail_estimate = 0.0;
  /// False when the hard cap was reached with the tail still above tol.
  bool converged = true;
};

/// Wiscombe-style floor ceil(x + 10 + 4 x^(1/3)) for argument x = |w r|.
inline unsigned wiscombe_order(double omega_r) {
  const double x = std::abs(omega_r);
  return static_cast<unsigned>(std::ceil(x + 10.0 + 4.0 * std::cbrt(x)));
}

/**
 * Cutoff order for a partial-wave sum at argument |w r|: the Wiscombe floor,
 * raised to the first order N with (2N+1)|j_N| <= tol/100. Nondecreasing in
 * omega_r because j_N grows with its argument below the turning point.
 */
inline unsigned truncation_order(double omega_r, double tol) {
  const double x = std::abs(omega_r);
  const unsigned floor_order = wiscombe_order(x);
  if (x == 0.0 || floor_order >= kHardCap) return std::min(floor_order, kHardCap);
  const double target = 1e-2 * tol;
  unsigned span = 32 + static_cast<unsigned>(8.0 * std::cbrt(x));
  for (;;) {
    const unsigned top = std::min(kHardCap, floor_order + span);
    const auto j = specfun::spherical_jn_sequence(top, x);
    for (unsigned n = floor_order; n <= top; ++n) {
      if ((2.0 * n + 1.0) * std::abs(j[n]) <= target) return n;
    }
    if (top == kHardCap) return kHardCap;
    span *= 2;
  }
}

/// i^n
inline complex i_pow(unsigned n) {
  switch (n % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

namespace detail {

/// sum_{n<=N} 2 i^n (n+1/2) P_n(cos_theta) P_n(cos_eta) j_n(x), x may be negative.
inline SeriesResult spatial_sum(double cos_theta, double cos_eta, double x, double tol) {
  SeriesResult out;
  unsigned order = truncation_order(x, tol);
  for (;;) {
    const auto pt = specfun::legendre_p_sequence(order, cos_theta);
    const auto pe = specfun::legendre_p_sequence(order, cos_eta);
    const auto jn = specfun::spherical_jn_sequence(order, std::abs(x));
    const bool flip = x < 0.0;
    complex sum{0.0, 0.0};
    for (unsigned n = 0; n <= order; ++n) {
      double j = jn[n];
      if (flip && (n & 1U)) j = -j;
      sum += i_pow(n) * ((2.0 * n + 1.0) * pt[n] * pe[n] * j);
    }
    double tail = (2.0 * order + 1.0) * std::abs(jn[order]);
    if (order > 0) tail = std::max(tail, (2.0 * order - 1.0) * std::abs(jn[order - 1]));
    out.value = sum;
    out.n_terms = order;
    out.tail_estimate = tail;
    if (tail <= tol) return out;
    if (order >= kHardCap) {
      out.converged = false;
      return out;
    }
    order = std::min(kHardCap, order + 10);
  }
}

inline SeriesResult eval_with_index(const BeamParams& b, double index, const FieldPoint& p,
                                    double tol) {
  const SphericalView v = to_spherical(p);
  const complex time_factor = std::polar(1.0, -b.omega() * p.t);
  if (v.degenerate) {
    SeriesResult out;
    out.value = time_factor;
    return out;
  }
  SeriesResult out = spatial_sum(b.cos_theta(), v.cos_eta, index * b.omega() * v.r, tol);
  out.value *= time_factor;
  return out;
}

}  // namespace detail

/**
 * Partial-wave evaluation of the beam at p. The default cutoff is extended
 * in steps of 10 until the tail bound drops to tol (hard cap 5000). At the
 * origin the value exp(-i w t) is returned with n_terms = 0.
 */
inline SeriesResult eval_series(const BeamParams& b, const FieldPoint& p, double tol = 1e-14) {
  return detail::eval_with_index(b, 1.0, p, tol);
}

/// Dispersive variant: the index only rescales the spherical-Bessel argument.
inline SeriesResult eval_series_dispersive(const BeamParams& b, const DispersionModel& m,
                                           const FieldPoint& p, double tol = 1e-14) {
  return detail::eval_with_index(b, m.evaluate(b.omega()), p, tol);
}

}  // namespace beamkit::pwseries
