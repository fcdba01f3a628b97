#pragma once

// Named collections of identity reports, as run by `beamkit verify`.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "beamkit/identities.hpp"
#include "beamkit/oscquad.hpp"
#include "beamkit/parallel.hpp"
#include "beamkit/wavepacket.hpp"

namespace beamkit::suites {

using identities::IdentityReport;
using Job = std::function<IdentityReport()>;

inline constexpr std::uint64_t kSeed = 20240917;

inline constexpr std::array<std::string_view, 10> kSuiteNames = {
    "all",       "stratton",   "ftpair",       "hochstadt", "orthogonality",
    "jnnorm",    "planewave",  "beamidentity", "triplesum", "xwave"};

inline bool is_suite(std::string_view name) {
  for (auto s : kSuiteNames) {
    if (s == name) return true;
  }
  return false;
}

/// Angle triple plus a flag telling whether it was drawn inside the support.
struct SampledAngles {
  wavepacket::ConeAngles angles;
  bool interior = false;
};

/**
 * Deterministic random cone-angle triples. Interior samples put cos_gamma in
 * the middle 80% of the support band [cos(eta+theta), cos(eta-theta)];
 * exterior samples keep at least 0.05 between cos_gamma and the band.
 */
inline std::vector<SampledAngles> sample_triples(std::size_t count, bool interior,
                                                 std::uint64_t seed = kSeed) {
  std::mt19937_64 rng(seed + (interior ? 0 : 1));
  std::uniform_real_distribution<double> cosine(-0.95, 0.95);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<SampledAngles> out;
  while (out.size() < count) {
    const double ct = cosine(rng);
    const double ce = cosine(rng);
    const double st = std::sqrt(1.0 - ct * ct);
    const double se = std::sqrt(1.0 - ce * ce);
    const double center = ct * ce;
    const double half = st * se;
    if (interior) {
      const double cg = center + 0.8 * half * (2.0 * unit(rng) - 1.0);
      out.push_back({{ct, ce, cg}, true});
      continue;
    }
    const double cg = 2.0 * unit(rng) - 1.0;
    if (std::abs(cg - center) - half >= 0.05) out.push_back({{ct, ce, cg}, false});
  }
  return out;
}

/// Field point for the X-wave suite with the flag of the support it was drawn from.
struct SampledPoint {
  double cos_theta = 0.0;
  FieldPoint point;
  bool interior = false;
};

inline std::vector<SampledPoint> sample_xwave_points(std::size_t count, bool interior,
                                                     std::uint64_t seed = kSeed) {
  std::mt19937_64 rng(seed + (interior ? 2 : 3));
  std::uniform_real_distribution<double> cosine(-0.9, 0.9);
  std::uniform_real_distribution<double> zdist(-2.0, 2.0);
  std::uniform_real_distribution<double> rdist(0.5, 3.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<SampledPoint> out;
  for (std::size_t k = 0; k < count; ++k) {
    const double c = cosine(rng);
    const double z = zdist(rng);
    const double rho = rdist(rng);
    const double width = std::sqrt(1.0 - c * c) * rho;
    const double u = interior ? 0.8 * (2.0 * unit(rng) - 1.0)
                              : (unit(rng) < 0.5 ? -1.0 : 1.0) * (1.2 + 1.8 * unit(rng));
    out.push_back({c, {z, rho, c * z + u * width}, interior});
  }
  return out;
}

/**
 * eps -> 0 limit of the damped Fourier integral of J_0, by polynomial
 * extrapolation through eps_k = 0.05 a 2^-k, k = 0..7.
 */
inline double xwave_fourier_oracle(double a, double b) {
  std::vector<double> h;
  std::vector<complex> v;
  for (int k = 0; k < 8; ++k) {
    const double eps = 0.05 * a * std::ldexp(1.0, -k);
    h.push_back(eps);
    v.emplace_back(oscquad::regularized_j0_fourier(a, b, eps));
  }
  return oscquad::detail::extrapolate_to_zero(h, v).real();
}

/// Closed-form value of the triple sum at all-zero cosines; scale for exterior checks.
inline double triple_sum_reference_scale() { return 2.0 / std::numbers::pi; }

inline std::vector<Job> stratton_jobs() {
  std::vector<Job> jobs;
  constexpr std::array<std::array<double, 2>, 5> points = {
      {{0.0, 1.0}, {1.0, 1.0}, {1.0, 0.0}, {-2.0, 0.5}, {0.3, 2.0}}};
  for (unsigned n = 0; n <= 12; ++n) {
    for (double w : {0.5, 2.0, 10.0}) {
      for (const auto& p : points) {
        jobs.push_back([=] { return identities::verify_stratton_integral(n, w, p[0], p[1], 1e-9); });
      }
    }
  }
  return jobs;
}

inline std::vector<Job> ftpair_jobs() {
  std::vector<Job> jobs;
  for (unsigned n = 0; n <= 6; ++n) {
    for (double b : {0.0, 0.3, 0.6, -0.45, 0.9}) {
      jobs.push_back([=] { return identities::legendre_ft_pair(n, b, 1e-8); });
    }
  }
  return jobs;
}

inline std::vector<Job> hochstadt_jobs() {
  std::vector<Job> jobs;
  jobs.push_back([] { return identities::hochstadt_sum_check(2.0, 2.0, 1.0); });
  jobs.push_back([] { return identities::hochstadt_sum_check(2.0, 3.0, -1.0); });
  jobs.push_back([] { return identities::hochstadt_sum_check(1.0, 4.0, 0.25); });
  std::mt19937_64 rng(kSeed + 4);
  std::uniform_real_distribution<double> radius(0.1, 20.0);
  std::uniform_real_distribution<double> cosine(-1.0, 1.0);
  for (int k = 0; k < 30; ++k) {
    const double l = radius(rng);
    const double m = radius(rng);
    const double c = cosine(rng);
    jobs.push_back([=] { return identities::hochstadt_sum_check(l, m, c); });
  }
  return jobs;
}

inline std::vector<Job> orthogonality_jobs() {
  std::vector<Job> jobs;
  for (unsigned n = 0; n <= 30; ++n) jobs.push_back([=] { return identities::legendre_orthogonality(n); });
  return jobs;
}

inline std::vector<Job> jnnorm_jobs() {
  std::vector<Job> jobs;
  for (unsigned n = 0; n <= 20; ++n) jobs.push_back([=] { return identities::jn_norm_integral(n); });
  return jobs;
}

inline std::vector<Job> planewave_jobs() {
  std::vector<Job> jobs;
  constexpr std::array<std::array<double, 2>, 5> args = {
      {{0.0, 0.3}, {3.0, 1.0}, {5.0, 0.2}, {3.0, 0.2}, {-7.5, -0.6}}};
  for (const auto& a : args) {
    jobs.push_back([=] { return identities::plane_wave_expansion_check(a[0], a[1], 40); });
  }
  jobs.push_back([] { return identities::plane_wave_negative_control(3.0, 0.2, 30); });
  return jobs;
}

inline std::vector<Job> beamidentity_jobs() {
  std::vector<Job> jobs;
  for (double x : {0.0, 0.5, 1.0, 5.0, 10.0, 20.0, 40.0}) {
    jobs.push_back([=] { return identities::bessel_beam_identity(x, 1e-8); });
  }
  return jobs;
}

/// Cesaro average at n_max = 4000 against 2/(pi sqrt(D)); 2% inside, 2e-2 * (2/pi) outside.
inline IdentityReport triple_sum_report(const SampledAngles& s) {
  constexpr unsigned n_max = 4000;
  const auto sum = wavepacket::triple_legendre_sum(s.angles, n_max, wavepacket::SumMode::cesaro);
  const double ref = wavepacket::triple_legendre_closed_form(s.angles);
  const double tol = s.interior ? 2e-2 : 2e-2 * triple_sum_reference_scale();
  IdentityReport r = identities::make_report(s.interior ? "triplesum_interior" : "triplesum_exterior",
                                             {{"cos_theta", s.angles.cos_theta},
                                              {"cos_eta", s.angles.cos_eta},
                                              {"cos_gamma", s.angles.cos_gamma},
                                              {"n_max", n_max}},
                                             sum.value, ref, tol,
                                             s.interior ? identities::Criterion::relative
                                                        : identities::Criterion::abs_or_rel);
  return r;
}

inline std::vector<Job> triplesum_jobs() {
  std::vector<Job> jobs;
  for (bool interior : {true, false}) {
    for (const auto& s : sample_triples(20, interior)) {
      jobs.push_back([=] { return triple_sum_report(s); });
    }
  }
  return jobs;
}

/// Closed form against the eps-extrapolated oracle (1e-3 relative) or exactly 0 outside.
inline IdentityReport xwave_report(const SampledPoint& s) {
  const double a = std::sqrt((1.0 - s.cos_theta) * (1.0 + s.cos_theta)) * s.point.rho;
  const double b = s.cos_theta * s.point.z - s.point.t;
  const double closed = wavepacket::xwave_closed_form(s.cos_theta, s.point);
  const double oracle = xwave_fourier_oracle(a, b);
  std::map<std::string, double> params{{"cos_theta", s.cos_theta},
                                       {"z", s.point.z},
                                       {"rho", s.point.rho},
                                       {"t", s.point.t}};
  if (s.interior) {
    return identities::make_report("xwave_interior", std::move(params), closed, oracle, 1e-3,
                                   identities::Criterion::relative);
  }
  params["oracle"] = oracle;
  return identities::make_report("xwave_exterior", std::move(params), closed, 0.0, 0.0);
}

inline std::vector<Job> xwave_jobs() {
  std::vector<Job> jobs;
  for (bool interior : {true, false}) {
    for (const auto& s : sample_xwave_points(10, interior)) {
      jobs.push_back([=] { return xwave_report(s); });
    }
  }
  return jobs;
}

inline std::vector<Job> jobs_for(std::string_view suite) {
  if (suite == "stratton") return stratton_jobs();
  if (suite == "ftpair") return ftpair_jobs();
  if (suite == "hochstadt") return hochstadt_jobs();
  if (suite == "orthogonality") return orthogonality_jobs();
  if (suite == "jnnorm") return jnnorm_jobs();
  if (suite == "planewave") return planewave_jobs();
  if (suite == "beamidentity") return beamidentity_jobs();
  if (suite == "triplesum") return triplesum_jobs();
  if (suite == "xwave") return xwave_jobs();
  if (suite == "all") {
    std::vector<Job> all;
    for (auto name : kSuiteNames) {
      if (name == "all") continue;
      auto part = jobs_for(name);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw DomainError("unknown suite: " + std::string(suite));
}

/// Runs a suite; report order is the job order whatever the thread count.
inline std::vector<IdentityReport> run_suite(std::string_view suite, unsigned threads) {
  const auto jobs = jobs_for(suite);
  std::vector<IdentityReport> out(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) { out[i] = jobs[i](); }, threads);
  return out;
}

}  // namespace beamkit::suites
