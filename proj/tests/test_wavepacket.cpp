#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "beamkit/oscquad.hpp"
#include "beamkit/wavepacket.hpp"

namespace wp = beamkit::wavepacket;
using beamkit::FieldPoint;
using std::numbers::pi;

TEST(SupportPredicate, Examples) {
  EXPECT_TRUE(wp::support_predicate({0.0, 0.0, 0.0}));
  EXPECT_FALSE(wp::support_predicate({1.0, 0.0, 0.5}));
  // 0.8 * 0.8 = 0.64 > |0.36 - cos_gamma| decides the boundary probe.
  EXPECT_TRUE(wp::support_predicate({0.6, 0.6, 0.359}));
  EXPECT_TRUE(wp::support_predicate({0.6, 0.6, 0.36 + 0.63}));
  EXPECT_FALSE(wp::support_predicate({0.6, 0.6, 0.36 + 0.65}));
  EXPECT_FALSE(wp::support_predicate({0.6, 0.6, -0.3}));
  EXPECT_FALSE(wp::support_predicate({0.0, 0.0, 2.5}));
}

TEST(XwaveClosedForm, Examples) {
  EXPECT_EQ(wp::xwave_closed_form(0.0, {0.0, 1.0, 0.0}), 2.0);
  EXPECT_EQ(wp::xwave_closed_form(1.0, {1.0, 5.0, 0.5}), 0.0);
  EXPECT_DOUBLE_EQ(wp::xwave_closed_form(0.6, {1.0, 2.0, 0.3}), 2.0 / std::sqrt(2.47));
  EXPECT_THROW(wp::xwave_closed_form(0.0, {0.0, 1.0, 1.0}), beamkit::SingularBoundaryError);
  EXPECT_THROW(wp::xwave_closed_form(1.5, {0.0, 1.0, 0.0}), beamkit::DomainError);
}

TEST(XwaveClosedForm, MatchesExtrapolatedRegularizedOracle) {
  const double c = 0.6, s = 0.8;
  const FieldPoint p{1.0, 2.0, 0.3};
  const double a = s * p.rho, b = c * p.z - p.t;
  std::vector<double> h;
  std::vector<std::complex<double>> v;
  for (int k = 0; k < 6; ++k) {
    const double eps = 0.1 * std::ldexp(1.0, -k);
    h.push_back(eps);
    v.emplace_back(beamkit::oscquad::regularized_j0_fourier(a, b, eps));
  }
  const double oracle = beamkit::oscquad::detail::extrapolate_to_zero(h, v).real();
  EXPECT_LE(std::abs(wp::xwave_closed_form(c, p) - oracle) / oracle, 1e-6);
}

TEST(TripleLegendreSum, Examples) {
  // The averaged series tends to 2/(pi sqrt(D)); at the all-zero triple that is 2/pi.
  const auto zero = wp::triple_legendre_sum({0.0, 0.0, 0.0}, 2000, wp::SumMode::cesaro);
  EXPECT_NEAR(zero.value.real(), 2.0 / pi, 2e-2 * 2.0 / pi);
  EXPECT_EQ(zero.n_terms, 2000u);

  const auto outside = wp::triple_legendre_sum({1.0, 0.3, 0.7}, 2000, wp::SumMode::cesaro);
  EXPECT_NEAR(outside.value.real(), 0.0, 2e-2);

  const wp::ConeAngles a{0.5, 0.2, 0.4};
  const double closed = 2.0 / (pi * std::sqrt(0.96 * 0.75 - 0.09));
  EXPECT_DOUBLE_EQ(wp::triple_legendre_closed_form(a), closed);
  const auto mid = wp::triple_legendre_sum(a, 4000, wp::SumMode::cesaro);
  EXPECT_LE(std::abs(mid.value.real() - closed) / closed, 2e-2);
}

TEST(TripleLegendreSum, PrintedNormalizationIsOffByPi) {
  // 2/sqrt(D) without the 1/pi overshoots the averaged series by a factor pi.
  for (wp::ConeAngles a : {wp::ConeAngles{0.0, 0.0, 0.0}, wp::ConeAngles{0.5, 0.2, 0.4}}) {
    const double sum = wp::triple_legendre_sum(a, 4000, wp::SumMode::cesaro).value.real();
    const double d = (1 - a.cos_theta * a.cos_theta) * (1 - a.cos_eta * a.cos_eta) -
                     std::pow(a.cos_eta * a.cos_theta - a.cos_gamma, 2);
    const double printed = 2.0 / std::sqrt(d);
    EXPECT_NEAR(printed / sum, pi, 0.05 * pi);
    EXPECT_GT(std::abs(printed - sum) / printed, 0.5);
  }
}

TEST(TripleLegendreSum, PermutationInvariantExactly) {
  std::array<double, 3> c{-0.37, 0.52, 0.81};
  std::sort(c.begin(), c.end());
  for (auto mode : {wp::SumMode::raw, wp::SumMode::cesaro, wp::SumMode::double_average}) {
    const auto ref = wp::triple_legendre_sum({c[0], c[1], c[2]}, 300, mode).value;
    auto perm = c;
    do {
      EXPECT_EQ(wp::triple_legendre_sum({perm[0], perm[1], perm[2]}, 300, mode).value, ref);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(TripleLegendreSum, ModesAndErrors) {
  const wp::ConeAngles a{0.1, -0.2, 0.3};
  const double closed = wp::triple_legendre_closed_form(a);
  const auto raw = wp::triple_legendre_sum(a, 1, wp::SumMode::raw);
  EXPECT_DOUBLE_EQ(raw.value.real(), 1.0 + 3.0 * 0.1 * -0.2 * 0.3);
  const auto ces = wp::triple_legendre_sum(a, 1, wp::SumMode::cesaro);
  EXPECT_DOUBLE_EQ(ces.value.real(), (1.0 + raw.value.real()) / 2.0);
  const auto dbl = wp::triple_legendre_sum(a, 3000, wp::SumMode::double_average);
  EXPECT_LE(std::abs(dbl.value.real() - closed) / closed, 2e-2);

  EXPECT_THROW(wp::triple_legendre_sum({0.0, 0.0, 1.2}, 10, wp::SumMode::cesaro), beamkit::DomainError);
  EXPECT_THROW(wp::triple_legendre_sum({0.0, 0.0, 0.0}, 0, wp::SumMode::cesaro), beamkit::DomainError);
  EXPECT_THROW(wp::triple_legendre_closed_form({0.6, 0.6, 1.0}), beamkit::SingularBoundaryError);
  EXPECT_THROW(wp::parse_sum_mode("abel"), beamkit::DomainError);
  EXPECT_EQ(wp::parse_sum_mode("double_average"), wp::SumMode::double_average);
}

TEST(WavepacketSeries, Examples) {
  const auto a = wp::wavepacket_series(0.0, {0.0, 1.0, 0.0}, 2000, wp::SumMode::cesaro);
  EXPECT_NEAR(a.value.real(), 2.0, 2e-2);

  const FieldPoint p{1.0, 2.0, 0.3};
  const auto b = wp::wavepacket_series(0.6, p, 4000, wp::SumMode::cesaro);
  EXPECT_NEAR(b.value.real(), 2.0 / std::sqrt(2.47), 2e-2);
  EXPECT_NEAR(b.value.real(), wp::xwave_closed_form(0.6, p), 2e-2);

  // |t - cos(theta) z| = 2.2 > sin(theta) rho = 0.4, with |t| <= r.
  const FieldPoint far{2.0, 0.5, -1.0};
  ASSERT_EQ(wp::xwave_closed_form(0.6, far), 0.0);
  EXPECT_NEAR(wp::wavepacket_series(0.6, far, 2000, wp::SumMode::cesaro).value.real(), 0.0, 2e-2);
}

TEST(WavepacketSeries, DomainErrors) {
  EXPECT_THROW(wp::wavepacket_series(0.5, {0.0, 0.0, 0.0}, 100, wp::SumMode::cesaro), beamkit::DomainError);
  EXPECT_THROW(wp::wavepacket_series(0.5, {0.3, 0.4, 0.6}, 100, wp::SumMode::cesaro), beamkit::DomainError);
}
