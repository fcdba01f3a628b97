#pragma once

/**
 * @brief Beam data model and the direct evaluation
 *   Phi(rho, z, t) = exp(i k_z z - i w t) J_0(k_rho rho),
 * k_z = w cos(theta), k_rho = w sin(theta), with c = 1.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "beamkit/errors.hpp"
#include "beamkit/specfun.hpp"

namespace beamkit {

using complex = std::complex<double>;

/// A space-time point. rho is the distance from the propagation axis.
struct FieldPoint {
  double z = 0.0;
  double rho = 0.0;
  double t = 0.0;
};

/// Spherical view of a field point: r, cos(eta) = z/r, cos(gamma) = t/r.
struct SphericalView {
  double r = 0.0;
  double cos_eta = 1.0;
  double cos_gamma = 0.0;
  /// r == 0; cos_eta and cos_gamma then hold the conventional values 1 and 0.
  bool degenerate = false;
};

inline SphericalView to_spherical(const FieldPoint& p) {
  SphericalView v;
  v.r = std::hypot(p.z, p.rho);
  if (v.r == 0.0) {
    v.degenerate = true;
    return v;
  }
  v.cos_eta = std::clamp(p.z / v.r, -1.0, 1.0);
  v.cos_gamma = p.t / v.r;
  return v;
}

/// One monochromatic beam. The cone angle is carried by its cosine; the
/// sine is always the nonnegative root.
class BeamParams {
 public:
  BeamParams(double omega, double cos_theta) : omega_(omega), cos_theta_(cos_theta) {
    if (!(std::abs(cos_theta) <= 1.0)) {
      throw DomainError("BeamParams: |cos_theta| must be <= 1");
    }
    if (!std::isfinite(omega)) throw DomainError("BeamParams: omega must be finite");
    sin_theta_ = std::sqrt((1.0 - cos_theta) * (1.0 + cos_theta));
  }

  double omega() const { return omega_; }
  double cos_theta() const { return cos_theta_; }
  double sin_theta() const { return sin_theta_; }
  double k_z() const { return omega_ * cos_theta_; }
  double k_rho() const { return omega_ * sin_theta_; }

 private:
  double omega_;
  double cos_theta_;
  double sin_theta_;
};

/// Frequency-dependent index of refraction n(w).
class DispersionModel {
 public:
  enum class Kind { vacuum, constant, cauchy };

  static DispersionModel vacuum() { return DispersionModel(Kind::vacuum, 1.0, 0.0); }

  static DispersionModel constant(double n0) {
    if (!(n0 > 0.0) || !std::isfinite(n0)) {
      throw ModelDomainError("constant dispersion: n0 must be finite and > 0");
    }
    return DispersionModel(Kind::constant, n0, 0.0);
  }

  /// n(w) = a + b w^2, the Cauchy form written in angular frequency.
  static DispersionModel cauchy(double a, double b) {
    if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
      throw ModelDomainError("cauchy dispersion: A must be > 0 and B finite");
    }
    return DispersionModel(Kind::cauchy, a, b);
  }

  Kind kind() const { return kind_; }
  double a() const { return a_; }
  double b() const { return b_; }

  double evaluate(double omega) const {
    double n = 1.0;
    switch (kind_) {
      case Kind::vacuum: return 1.0;
      case Kind::constant: n = a_; break;
      case Kind::cauchy: n = a_ + b_ * omega * omega; break;
    }
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw ModelDomainError("dispersion model gives non-positive index at omega = " +
                             std::to_string(omega));
    }
    return n;
  }

  std::string name() const {
    switch (kind_) {
      case Kind::vacuum: return "vacuum";
      case Kind::constant: return "constant";
      case Kind::cauchy: return "cauchy";
    }
    return "unknown";
  }

 private:
  DispersionModel(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}
  Kind kind_;
  double a_;
  double b_;
};

namespace detail {

inline complex eval_direct_with_index(const BeamParams& b, double index, const FieldPoint& p) {
  const double k = index * b.omega();
  const double phase = k * b.cos_theta() * p.z - b.omega() * p.t;
  return std::polar(1.0, phase) * specfun::bessel_j0(k * b.sin_theta() * p.rho);
}

}  // namespace detail

inline complex eval_direct(const BeamParams& b, const FieldPoint& p) {
  return detail::eval_direct_with_index(b, 1.0, p);
}

/// The index multiplies w in the spatial arguments only; the time factor keeps w.
inline complex eval_direct_dispersive(const BeamParams& b, const DispersionModel& m,
                                      const FieldPoint& p) {
  return detail::eval_direct_with_index(b, m.evaluate(b.omega()), p);
}

}  // namespace beamkit
