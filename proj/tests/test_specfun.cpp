#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "beamkit/specfun.hpp"
#include "oracles.hpp"

namespace sf = beamkit::specfun;

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace

TEST(Legendre, LowOrders) {
  EXPECT_EQ(sf::legendre_p(0, 0.73), 1.0);
  EXPECT_DOUBLE_EQ(sf::legendre_p(2, 0.5), -0.125);
  EXPECT_EQ(sf::legendre_p(1, -0.4), -0.4);
}

TEST(Legendre, MatchesRodriguesOracle) {
  const double want = static_cast<double>(oracle::legendre_p(10, oracle::hp("0.3")));
  EXPECT_NEAR(sf::legendre_p(10, 0.3), want, 1e-15);
  for (unsigned n : {3u, 7u, 15u, 24u}) {
    for (double x : {-0.95, -0.3, 0.1, 0.6, 0.99}) {
      const double w = static_cast<double>(oracle::legendre_p(n, oracle::hp(x)));
      EXPECT_NEAR(sf::legendre_p(n, x), w, 5e-15) << "n=" << n << " x=" << x;
    }
  }
}

TEST(Legendre, DomainAndClamping) {
  EXPECT_THROW(sf::legendre_p(3, 1.0 + 1e-9), beamkit::DomainError);
  EXPECT_THROW(sf::legendre_p(3, -1.5), beamkit::DomainError);
  EXPECT_THROW(sf::legendre_p(3, std::nan("")), beamkit::DomainError);
  EXPECT_EQ(sf::legendre_p(5, 1.0 + 5e-13), 1.0);
  EXPECT_EQ(sf::legendre_p(5, -1.0 - 5e-13), -1.0);
}

TEST(Legendre, SequenceMatchesScalar) {
  const auto s1 = sf::legendre_p_sequence(1, 0.4);
  ASSERT_EQ(s1.size(), 2u);
  EXPECT_EQ(s1[0], 1.0);
  EXPECT_EQ(s1[1], 0.4);

  const auto alt = sf::legendre_p_sequence(5, -1.0);
  for (unsigned n = 0; n <= 5; ++n) EXPECT_EQ(alt[n], (n % 2) ? -1.0 : 1.0);

  const auto s = sf::legendre_p_sequence(20, 0.3);
  for (unsigned n = 0; n <= 20; ++n) EXPECT_EQ(s[n], sf::legendre_p(n, 0.3));
}

TEST(Legendre, RecurrenceResidualAndBound) {
  for (double x : {-1.0, -0.77, -0.2, 0.0, 0.31, 0.9, 1.0}) {
    const auto p = sf::legendre_p_sequence(500, x);
    for (unsigned n = 1; n < 500; ++n) {
      const double res = (n + 1.0) * p[n + 1] - (2.0 * n + 1.0) * x * p[n] + n * p[n - 1];
      ASSERT_LE(std::abs(res), 1e-12) << n << " " << x;
      ASSERT_LE(std::abs(p[n]), 1.0 + 1e-14);
    }
  }
}

TEST(SphericalBessel, ClosedForms) {
  EXPECT_NEAR(sf::spherical_jn(0, 2.0), std::sin(2.0) / 2.0, 1e-16);
  EXPECT_NEAR(sf::spherical_jn(0, 2.0), 0.4546487134, 1e-10);
  EXPECT_NEAR(sf::spherical_jn(1, 2.0), std::sin(2.0) / 4 - std::cos(2.0) / 2, 1e-16);
  EXPECT_NEAR(sf::spherical_jn(1, 2.0), 0.4353977749, 1e-10);
  EXPECT_EQ(sf::spherical_jn(0, 0.0), 1.0);
  EXPECT_EQ(sf::spherical_jn(4, 0.0), 0.0);
}

TEST(SphericalBessel, MatchesSeriesOracle) {
  const double want = static_cast<double>(oracle::spherical_jn(15, oracle::hp(3)));
  EXPECT_LE(rel_err(sf::spherical_jn(15, 3.0), want), 1e-12);

  const auto seq = sf::spherical_jn_sequence(60, 10.0);
  for (unsigned n = 0; n <= 60; ++n) {
    const double w = static_cast<double>(oracle::spherical_jn(n, oracle::hp(10)));
    if (std::abs(w) > 1e-280) {
      EXPECT_LE(rel_err(seq[n], w), 1e-12) << "n=" << n;
    }
  }
}

TEST(SphericalBessel, WideRangeAgainstOracle) {
  // Relative accuracy on values away from zeros, mixing both recurrence regimes.
  for (double x : {0.5, 3.7, 25.0, 49.5, 80.0}) {
    const auto seq = sf::spherical_jn_sequence(120, x);
    for (unsigned n = 0; n <= 120; n += 7) {
      const double w = static_cast<double>(oracle::spherical_jn(n, oracle::hp(x)));
      if (std::abs(w) > 1e-280 && std::abs(w) > 1e-6 * std::pow(x, -1.0)) {
        EXPECT_LE(rel_err(seq[n], w), 1e-12) << "n=" << n << " x=" << x;
      }
    }
  }
}

TEST(SphericalBessel, SequenceEdgeCases) {
  const auto zero = sf::spherical_jn_sequence(3, 0.0);
  EXPECT_EQ(zero.values, (std::vector<double>{1, 0, 0, 0}));

  const auto two = sf::spherical_jn_sequence(2, 2.0);
  EXPECT_NEAR(two[0], std::sin(2.0) / 2.0, 1e-16);
  EXPECT_NEAR(two[1], std::sin(2.0) / 4 - std::cos(2.0) / 2, 1e-16);

  const auto tiny = sf::spherical_jn_sequence(250, 1e-3);
  EXPECT_TRUE(tiny.underflow_flushed);
  EXPECT_EQ(tiny[250], 0.0);
  for (double v : tiny.values) EXPECT_TRUE(std::isfinite(v));
}

TEST(SphericalBessel, RecurrenceAndSinIdentity) {
  for (double x : {0.7, 2.0, 9.3, 31.0, 150.0, 200.0}) {
    EXPECT_NEAR(sf::spherical_jn(0, x) * x, std::sin(x), 1e-14);
    const auto j = sf::spherical_jn_sequence(250, x);
    for (unsigned n = 1; n < 250; ++n) {
      if (std::abs(j[n]) <= 1e-200) continue;
      const double lhs = j[n - 1] + j[n + 1];
      const double rhs = (2.0 * n + 1.0) / x * j[n];
      const double scale = std::max({std::abs(lhs), std::abs(rhs), std::abs(j[n - 1])});
      EXPECT_LE(std::abs(lhs - rhs), 1e-11 * scale) << "n=" << n << " x=" << x;
    }
  }
}

TEST(SphericalBessel, SmallArgumentScaling) {
  const double x = 1e-3;
  double dfact = 1.0;
  double xn = 1.0;
  for (unsigned n = 0; n <= 8; ++n) {
    if (n > 0) {
      dfact *= 2.0 * n + 1.0;
      xn *= x;
    }
    EXPECT_LE(rel_err(sf::spherical_jn(n, x), xn / dfact), 1e-2) << n;
  }
}

TEST(SphericalBessel, SignedArgumentParity) {
  EXPECT_EQ(sf::spherical_jn_signed(3, -2.5), -sf::spherical_jn(3, 2.5));
  EXPECT_EQ(sf::spherical_jn_signed(4, -2.5), sf::spherical_jn(4, 2.5));
}

TEST(BesselJ0, ValuesAndSymmetry) {
  EXPECT_EQ(sf::bessel_j0(0.0), 1.0);
  EXPECT_EQ(sf::bessel_j0(-5.3), sf::bessel_j0(5.3));
  EXPECT_NEAR(sf::bessel_j0(2.404825557695773), 0.0, 1e-12);
}

TEST(BesselJ0, FirstZeroByBisectionOnOracle) {
  oracle::hp lo = 2, hi = 3;
  for (int i = 0; i < 120; ++i) {
    const oracle::hp mid = (lo + hi) / 2;
    if (oracle::bessel_j0(mid) > 0) lo = mid; else hi = mid;
  }
  const double zero = static_cast<double>(lo);
  EXPECT_NEAR(zero, 2.404825557695773, 1e-15);
  EXPECT_NEAR(sf::bessel_j0(zero), 0.0, 1e-14);
}

TEST(BesselJ0, AbsoluteAccuracyAcrossRegimes) {
  // Dense sweep through all three evaluation regimes against the 50-digit series.
  for (double x = 0.0; x <= 60.0; x += 0.173) {
    const double w = static_cast<double>(oracle::bessel_j0(oracle::hp(x)));
    ASSERT_NEAR(sf::bessel_j0(x), w, 1e-13) << "x=" << x;
  }
  for (double x : {11.999, 12.0, 24.999, 25.0, 99.3, 250.0, 499.9}) {
    const double w = static_cast<double>(oracle::bessel_j0(oracle::wide(x)));
    EXPECT_NEAR(sf::bessel_j0(x), w, 1e-13) << "x=" << x;
  }
}
