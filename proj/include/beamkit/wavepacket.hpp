#pragma once

/**
 * @brief Constant-spectrum Bessel-beam wavepacket (X-wave).
 *
 * Closed form of the frequency superposition
 *   int exp(i w (cos_theta z - t)) J_0(w sin_theta rho) dw
 *     = 2 / sqrt(sin^2 theta rho^2 - (t - cos_theta z)^2)   inside the support,
 * and its partial-wave counterpart, the triple Legendre series
 *   sum (2n+1) P_n(cos theta) P_n(cos eta) P_n(cos gamma) = 2 / (pi sqrt(D)),
 *   D = sin^2 eta sin^2 theta - (cos eta cos theta - cos gamma)^2,
 * which vanishes outside the support sin eta sin theta > |cos eta cos theta - cos gamma|.
 *
 * The series does not converge in the ordinary sense; partial sums are
 * reported raw or after one or two rounds of Cesaro (C,1) averaging.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "beamkit/beamcore.hpp"
#include "beamkit/errors.hpp"
#include "beamkit/pwseries.hpp"
#include "beamkit/specfun.hpp"

namespace beamkit::wavepacket {

using pwseries::SeriesResult;

struct ConeAngles {
  double cos_theta = 0.0;
  double cos_eta = 0.0;
  /// May exceed 1 in magnitude; the support predicate copes, the series does not.
  double cos_gamma = 0.0;
};

enum class SumMode { raw, cesaro, double_average };

inline std::string_view to_string(SumMode m) {
  switch (m) {
    case SumMode::raw: return "raw";
    case SumMode::cesaro: return "cesaro";
    case SumMode::double_average: return "double_average";
  }
  return "raw";
}

inline SumMode parse_sum_mode(std::string_view s) {
  if (s == "raw") return SumMode::raw;
  if (s == "cesaro") return SumMode::cesaro;
  if (s == "double_average") return SumMode::double_average;
  throw DomainError("unknown summation mode: " + std::string(s));
}

namespace detail {

inline double nonneg_sine(double c) { return std::sqrt(std::max(0.0, (1.0 - c) * (1.0 + c))); }

/// D = sin^2 eta sin^2 theta - (cos eta cos theta - cos gamma)^2.
inline double support_discriminant(const ConeAngles& a) {
  const double s = nonneg_sine(a.cos_eta) * nonneg_sine(a.cos_theta);
  const double d = a.cos_eta * a.cos_theta - a.cos_gamma;
  return s * s - d * d;
}

}  // namespace detail

/// sin eta sin theta > |cos eta cos theta - cos gamma| (strict).
inline bool support_predicate(const ConeAngles& a) {
  if (std::abs(a.cos_theta) > 1.0 || std::abs(a.cos_eta) > 1.0) return false;
  const double lhs = detail::nonneg_sine(a.cos_eta) * detail::nonneg_sine(a.cos_theta);
  return lhs > std::abs(a.cos_eta * a.cos_theta - a.cos_gamma);
}

/// Closed-form value of the triple Legendre series: 2/(pi sqrt(D)) in the support, else 0.
inline double triple_legendre_closed_form(const ConeAngles& a) {
  const double disc = detail::support_discriminant(a);
  if (std::abs(disc) < 1e-14) {
    throw SingularBoundaryError("triple Legendre sum: angles on the support boundary");
  }
  if (!support_predicate(a)) return 0.0;
  return 2.0 / (std::numbers::pi * std::sqrt(disc));
}

/// X-wave: 2/sqrt(sin^2 theta rho^2 - (t - cos theta z)^2) where |t - cos theta z| < sin theta rho, else 0.
inline double xwave_closed_form(double cos_theta, const FieldPoint& p) {
  if (!(std::abs(cos_theta) <= 1.0)) throw DomainError("xwave: |cos_theta| must be <= 1");
  const double a = detail::nonneg_sine(cos_theta) * p.rho;
  const double b = p.t - cos_theta * p.z;
  const double rad = a * a - b * b;
  if (std::abs(rad) < 1e-14) {
    throw SingularBoundaryError("xwave: point on the boundary |t - cos(theta) z| = sin(theta) rho");
  }
  return rad > 0.0 ? 2.0 / std::sqrt(rad) : 0.0;
}

/**
 * Partial sums of sum_{n<=n_max} (2n+1) P_n(cos theta) P_n(cos eta) P_n(cos gamma).
 *
 * The three cosines are sorted before the product is formed, so every
 * permutation of the arguments gives bit-identical partial sums.
 */
inline SeriesResult triple_legendre_sum(const ConeAngles& a, unsigned n_max, SumMode mode) {
  if (n_max < 1) throw DomainError("triple_legendre_sum: n_max must be >= 1");
  constexpr double slack = 1e-12;
  for (double c : {a.cos_theta, a.cos_eta, a.cos_gamma}) {
    if (!(std::abs(c) <= 1.0 + slack)) {
      throw DomainError("triple_legendre_sum: every cosine must lie in [-1, 1]");
    }
  }
  std::array<double, 3> c{a.cos_theta, a.cos_eta, a.cos_gamma};
  std::sort(c.begin(), c.end());
  const auto p0 = specfun::legendre_p_sequence(n_max, c[0]);
  const auto p1 = specfun::legendre_p_sequence(n_max, c[1]);
  const auto p2 = specfun::legendre_p_sequence(n_max, c[2]);

  double partial = 0.0;
  double cesaro_acc = 0.0;
  double double_acc = 0.0;
  double last_term = 0.0;
  for (unsigned n = 0; n <= n_max; ++n) {
    last_term = (2.0 * n + 1.0) * p0[n] * p1[n] * p2[n];
    partial += last_term;
    cesaro_acc += partial;
    double_acc += cesaro_acc / (n + 1.0);
  }
  SeriesResult out;
  out.n_terms = n_max;
  out.tail_estimate = std::abs(last_term);
  const double count = n_max + 1.0;
  switch (mode) {
    case SumMode::raw: out.value = partial; break;
    case SumMode::cesaro: out.value = cesaro_acc / count; break;
    case SumMode::double_average: out.value = double_acc / count; break;
  }
  return out;
}

/**
 * Series form of the constant-spectrum wavepacket at p:
 * (1/r) 2 pi sum (n + 1/2) P_n(cos theta) P_n(cos eta) P_n(cos gamma),
 * cos eta = z/r, cos gamma = t/r. Requires r > 0 and |t| <= r.
 */
inline SeriesResult wavepacket_series(double cos_theta, const FieldPoint& p, unsigned n_max,
                                      SumMode mode) {
  const SphericalView v = to_spherical(p);
  if (v.degenerate) throw DomainError("wavepacket_series: r must be > 0");
  if (std::abs(p.t) > v.r) {
    throw DomainError("wavepacket_series: |t| > r puts cos(gamma) outside [-1, 1]");
  }
  const double cos_gamma = std::clamp(v.cos_gamma, -1.0, 1.0);
  SeriesResult out = triple_legendre_sum({cos_theta, v.cos_eta, cos_gamma}, n_max, mode);
  const double scale = std::numbers::pi / v.r;
  out.value *= scale;
  out.tail_estimate *= scale;
  return out;
}

}  // namespace beamkit::wavepacket
