#pragma once

/**
 * @brief Special-function kernels used by every beam representation:
 * Legendre polynomials, spherical Bessel functions j_n and the cylindrical
 * Bessel function J_0. No external dependencies.
 */

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "beamkit/errors.hpp"

namespace beamkit::specfun {

/// Values f_0 .. f_{n_max} of a sequence of special functions at one argument.
struct RealSequence {
  std::vector<double> values;
  /// Set when at least one entry fell below the flush threshold and was zeroed.
  bool underflow_flushed = false;

  std::size_t n_max() const { return values.empty() ? 0 : values.size() - 1; }
  double operator[](std::size_t n) const { return values[n]; }
  std::size_t size() const { return values.size(); }
};

/// Magnitudes below this are flushed to zero in j_n tables.
inline constexpr double kFlushThreshold = 1e-300;

namespace detail {

inline double clamp_legendre_arg(double x) {
  constexpr double slack = 1e-12;
  if (!(std::abs(x) <= 1.0 + slack)) {
    throw DomainError("legendre_p: |x| > 1 (x = " + std::to_string(x) + ")");
  }
  if (x > 1.0) return 1.0;
  if (x < -1.0) return -1.0;
  return x;
}

// j_1 for small x, where sin x/x^2 - cos x/x cancels badly.
inline double j1_small(double x) {
  const double x2 = x * x;
  double term = x / 3.0;
  double sum = term;
  for (int k = 1; k < 12; ++k) {
    term *= -x2 / (2.0 * k * (2.0 * k + 3.0));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

inline double j0_closed(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

inline double j1_closed(double x) {
  if (x < 0.5) return j1_small(x);
  return (std::sin(x) / x - std::cos(x)) / x;
}

}  // namespace detail

/// P_n(x) by the three-term recurrence. Arguments within 1e-12 of the
/// interval are clamped onto it; anything further out is a DomainError.
inline double legendre_p(unsigned n, double x) {
  x = detail::clamp_legendre_arg(x);
  if (n == 0) return 1.0;
  double p_prev = 1.0;
  double p = x;
  for (unsigned k = 1; k < n; ++k) {
    const double p_next = ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0);
    p_prev = p;
    p = p_next;
  }
  return p;
}

/// P_0(x) .. P_{n_max}(x) from one recurrence pass; entry k is bit-identical
/// to legendre_p(k, x).
inline RealSequence legendre_p_sequence(unsigned n_max, double x) {
  x = detail::clamp_legendre_arg(x);
  RealSequence seq;
  seq.values.resize(n_max + 1);
  seq.values[0] = 1.0;
  if (n_max == 0) return seq;
  seq.values[1] = x;
  for (unsigned k = 1; k < n_max; ++k) {
    seq.values[k + 1] =
        ((2.0 * k + 1.0) * x * seq.values[k] - k * seq.values[k - 1]) / (k + 1.0);
  }
  return seq;
}

/**
 * j_0(x) .. j_{n_max}(x) for x >= 0.
 *
 * Upward recurrence is only stable while n <= x, so it is used when
 * x >= n_max. Otherwise the sequence comes from a Miller downward
 * recurrence started well above max(n_max, x) and normalized against
 * whichever of the closed forms j_0, j_1 is larger in magnitude.
 * Entries below kFlushThreshold are zeroed and flagged.
 */
inline RealSequence spherical_jn_sequence(unsigned n_max, double x) {
  RealSequence seq;
  seq.values.assign(n_max + 1, 0.0);
  if (x < 0.0 || std::isnan(x)) {
    throw DomainError("spherical_jn_sequence: x must be >= 0");
  }
  if (x == 0.0) {
    seq.values[0] = 1.0;
    return seq;
  }
  const double j0 = detail::j0_closed(x);
  seq.values[0] = j0;
  if (n_max == 0) return seq;
  const double j1 = detail::j1_closed(x);

  if (x >= static_cast<double>(n_max) && x >= 1.0) {
    seq.values[1] = j1;
    for (unsigned k = 1; k < n_max; ++k) {
      seq.values[k + 1] = (2.0 * k + 1.0) / x * seq.values[k] - seq.values[k - 1];
    }
    return seq;
  }

  const double top = std::max(static_cast<double>(n_max), x);
  const auto start =
      static_cast<unsigned>(top + 30.0 + 4.0 * std::sqrt(top) + std::cbrt(x) * 6.0);
  constexpr double big = 1e250;
  constexpr double rescale = 1e-250;

  // Unnormalized minimal solution, filled downward.
  std::vector<double> f(start + 2, 0.0);
  f[start + 1] = 0.0;
  f[start] = 1e-300;
  for (unsigned k = start; k >= 1; --k) {
    f[k - 1] = (2.0 * k + 1.0) / x * f[k] - f[k + 1];
    if (std::abs(f[k - 1]) > big) {
      for (unsigned m = k - 1; m <= start + 1 && m < f.size(); ++m) f[m] *= rescale;
    }
  }
  const double scale = std::abs(j0) >= std::abs(j1) ? j0 / f[0] : j1 / f[1];
  for (unsigned k = 0; k <= n_max; ++k) {
    const double v = f[k] * scale;
    if (std::abs(v) < kFlushThreshold || !std::isfinite(v)) {
      if (v != 0.0) seq.underflow_flushed = true;
      seq.values[k] = 0.0;
    } else {
      seq.values[k] = v;
    }
  }
  seq.values[0] = j0;
  seq.values[1] = j1;
  return seq;
}

/// j_n(x) for x >= 0.
inline double spherical_jn(unsigned n, double x) {
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (n == 0) return detail::j0_closed(x);
  if (n == 1) return detail::j1_closed(x);
  return spherical_jn_sequence(n, x).values[n];
}

/// j_n on the whole real line via j_n(-x) = (-1)^n j_n(x).
inline double spherical_jn_signed(unsigned n, double x) {
  const double v = spherical_jn(n, std::abs(x));
  return (x < 0.0 && (n & 1U)) ? -v : v;
}

namespace detail {

inline double j0_series(double x) {
  // Long double keeps the alternating-series cancellation below 1e-15 up to |x| = 12.
  const long double q = -(static_cast<long double>(x) * x) / 4.0L;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 80; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-22L) break;
  }
  return static_cast<double>(sum);
}

// Backward recurrence for J_n with J_0 + 2 sum J_{2k} = 1.
inline double j0_miller(double x) {
  const auto start = static_cast<int>(x + 40.0 + 8.0 * std::sqrt(x)) & ~1;
  double f_next = 0.0;
  double f = 1e-280;
  double norm = 0.0;
  double j0 = 0.0;
  for (int k = start; k >= 1; --k) {
    const double f_prev = 2.0 * k / x * f - f_next;
    f_next = f;
    f = f_prev;
    if (std::abs(f) > 1e250) {
      f *= 1e-250;
      f_next *= 1e-250;
      norm *= 1e-250;
    }
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * f;
  }
  j0 = f;
  norm += j0;
  return j0 / norm;
}

// Hankel expansion; the smallest term is ~exp(-2x), negligible for x >= 25.
inline double j0_asymptotic(double x) {
  const double inv8x = 1.0 / (8.0 * x);
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double prev_mag = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= odd * odd * inv8x / k;
    const double mag = std::abs(term);
    if (mag > prev_mag || mag < 1e-18) break;
    prev_mag = mag;
    // a_k/x^k contributes to Q for odd k, to P for even k, with alternating signs.
    switch (k % 4) {
      case 1: q -= term; break;
      case 2: p -= term; break;
      case 3: q += term; break;
      default: p += term; break;
    }
  }
  // cos(x - pi/4) and sin(x - pi/4) without rounding x - pi/4.
  const double c = std::cos(x);
  const double s = std::sin(x);
  const double cos_chi = (c + s) * std::numbers::sqrt2 / 2.0;
  const double sin_chi = (s - c) * std::numbers::sqrt2 / 2.0;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cos_chi - q * sin_chi);
}

}  // namespace detail

/// J_0(x), even in x. Absolute accuracy about 1e-15 up to |x| = 500.
inline double bessel_j0(double x) {
  x = std::abs(x);
  if (x < 12.0) return detail::j0_series(x);
  if (x < 25.0) return detail::j0_miller(x);
  return detail::j0_asymptotic(x);
}

}  // namespace beamkit::specfun
