#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "beamkit/beamcore.hpp"
#include "beamkit/integralrep.hpp"
#include "beamkit/oscquad.hpp"

namespace ir = beamkit::integralrep;
using beamkit::BeamParams;
using beamkit::DispersionModel;
using beamkit::FieldPoint;

TEST(ComputeR, ExamplesAndClamp) {
  EXPECT_EQ(ir::compute_R(3.0, 3.0, 1.0), 0.0);
  EXPECT_EQ(ir::compute_R(2.0, 5.0, -1.0), 7.0);
  EXPECT_EQ(ir::compute_R(3.0, 4.0, 0.0), 5.0);
  const double big = 1e8 + 0.1;
  const double r = ir::compute_R(big, big, 1.0);
  EXPECT_TRUE(std::isfinite(r));
  EXPECT_GE(r, 0.0);
}

TEST(ComputeR, TriangleInequality) {
  for (double l = 0.0; l <= 20.0; l += 0.7) {
    for (double m = 0.0; m <= 20.0; m += 1.3) {
      for (double c = -1.0; c <= 1.0; c += 0.125) {
        const double r = ir::compute_R(l, m, c);
        EXPECT_GE(r, std::abs(l - m) - 1e-12);
        EXPECT_LE(r, l + m + 1e-12);
      }
    }
  }
}

TEST(EvalIntegralRep, Examples) {
  const auto plane = ir::eval_integral_rep(BeamParams(2.0, 1.0), {1.0, 0.5, 0.0});
  EXPECT_TRUE(plane.converged);
  EXPECT_LE(std::abs(plane.value - std::polar(1.0, 2.0)), 1e-6);

  for (FieldPoint p : {FieldPoint{1, 2, 0}, FieldPoint{-3, 0.4, 0}}) {
    const auto still = ir::eval_integral_rep(BeamParams(0.0, 0.4), p);
    EXPECT_LE(std::abs(still.value - 1.0), 1e-6);
  }

  const BeamParams b(3.0, std::sqrt(2.0) / 2.0);
  const FieldPoint p{1.0, 2.0, 0.0};
  const auto r = ir::eval_integral_rep(b, p);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(std::abs(r.value - beamkit::eval_direct(b, p)), 1e-6);
}

TEST(EvalIntegralRep, OriginIsAnalytic) {
  const auto r = ir::eval_integral_rep(BeamParams(2.0, 0.6), {0.0, 0.0, 0.3});
  EXPECT_EQ(r.value, std::polar(1.0, -0.6));
  EXPECT_EQ(r.n_evals, 0u);
}

TEST(EvalIntegralRep, GridAgreesWithDirect) {
  double worst = 0.0;
  for (double w : {0.5, 3.0, 12.0}) {
    for (double c : {-0.9, 0.0, 0.7, 1.0}) {
      const BeamParams b(w, c);
      for (double z : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
        for (double rho : {0.0, 0.3, 1.0, 2.0, 5.0}) {
          const FieldPoint p{z, rho, 0.0};
          const auto r = ir::eval_integral_rep(b, p);
          ASSERT_TRUE(r.converged) << w << " " << c << " " << z << " " << rho;
          worst = std::max(worst, std::abs(r.value - beamkit::eval_direct(b, p)));
        }
      }
    }
  }
  EXPECT_LE(worst, 1e-6);
}

TEST(EvalIntegralRep, EquatorialImaginaryPartVanishes) {
  for (double rho : {0.5, 2.0, 7.0}) {
    const auto r = ir::eval_integral_rep(BeamParams(1.5, 0.0), {0.0, rho, 0.0});
    EXPECT_LE(std::abs(r.value.imag()), 1e-8);
  }
}

TEST(EvalIntegralRep, RawAxisValueIsHalfTheBeam) {
  // On the axis the symmetric integral sits on the jump of the Fourier pair.
  for (double z : {1.0, -2.5}) {
    const BeamParams b(2.0, 0.6);
    const FieldPoint p{z, 0.0, 0.0};
    const auto raw = ir::eval_integral_rep_raw(b, p);
    const auto ext = ir::eval_integral_rep(b, p);
    const auto direct = beamkit::eval_direct(b, p);
    EXPECT_LE(std::abs(raw.value - 0.5 * direct), 1e-7);
    EXPECT_LE(std::abs(ext.value - direct), 1e-6);
  }
  // Off the axis the two agree.
  const FieldPoint q{1.0, 0.5, 0.0};
  EXPECT_EQ(ir::eval_integral_rep_raw(BeamParams(2.0, 0.6), q).value,
            ir::eval_integral_rep(BeamParams(2.0, 0.6), q).value);
}

TEST(EvalIntegralRep, MatchesLiteralIntegrand) {
  // Brute-force the unshifted integral with uniform cells.
  const BeamParams b(1.7, 0.35);
  const FieldPoint p{0.8, 1.1, 0.0};
  const auto args = ir::kernel_args(b, p);
  auto f = [&](double lambda) { return ir::raw_integrand(lambda, args); };
  const auto lit = beamkit::oscquad::integrate_oscillatory_infinite(f, 2.0 * std::numbers::pi, 1e-9);
  ASSERT_TRUE(lit.converged);
  const auto r = ir::eval_integral_rep(b, p);
  EXPECT_LE(std::abs(lit.value / std::numbers::pi - r.value), 1e-6);
}

TEST(EvalIntegralRepDispersive, Examples) {
  const BeamParams b(2.0, 0.8);
  const FieldPoint p{0.5, 0.5, 0.0};
  EXPECT_EQ(ir::eval_integral_rep_dispersive(b, DispersionModel::vacuum(), p).value,
            ir::eval_integral_rep(b, p).value);

  const FieldPoint q{1.2, 0.6, 0.0};
  const auto scaled = ir::eval_integral_rep_dispersive(BeamParams(1.0, 0.5), DispersionModel::constant(2.0), q);
  EXPECT_LE(std::abs(scaled.value - ir::eval_integral_rep(BeamParams(2.0, 0.5), q).value), 1e-12);

  const auto m = DispersionModel::cauchy(1.5, 0.01);
  EXPECT_LE(std::abs(ir::eval_integral_rep_dispersive(b, m, p).value -
                     beamkit::eval_direct_dispersive(b, m, p)),
            1e-6);
}
