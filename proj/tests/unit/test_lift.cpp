#include <gtest/gtest.h>

#include <cmath>

#include "framelift/catalog.hpp"
#include "framelift/lift.hpp"

using namespace framelift;

namespace {

const FDConfig cfg;

Vec od_q(const LiftSetup& L, const Vec& p, double a) {
  Vec q = Vec::Constant(L.od->dim(), a);
  q.head(p.size()) = p;
  return q;
}

}  // namespace

TEST(LiftMap, FramesScaleBySqrtLambda) {
  const auto& e = get("E5");
  const Vec p = Vec::Constant(3, 0.1);
  const LiftSetup L = make_lift_setup(e.phi, p, cfg);
  const Frame w = lift_map(L, L.od->decode(od_q(L, p, 0.2)), cfg);
  EXPECT_LT((w.E.transpose() * w.E - 4.0 * Mat::Identity(2, 2)).norm(), 1e-12);
}

TEST(LiftMap, RejectsFramesOutsideOH) {
  const auto& e = get("E1");
  const LiftSetup L = make_lift_setup(e.phi, Vec::Zero(3), cfg);
  EXPECT_THROW(lift_map(L, {Vec::Zero(3), Mat::Identity(3, 3) * 2.0}, cfg), PreconditionError);
}

TEST(LiftDifferential, ProductCases) {
  const auto& e = get("E2");
  const Vec p = e.reference_point;
  const LiftSetup L = make_lift_setup(e.phi, p, cfg);
  const Frame u = L.od->decode(od_q(L, p, 0.15));
  const Vec X = u.E.col(0), Y = u.E.col(2);
  EXPECT_LT(lift_differential_residual(L, {LiftCase::HorizontalOfH, X, {}}, u, FormulaVariant::AsPrinted, cfg), 5e-4);
  EXPECT_LT(lift_differential_residual(L, {LiftCase::HorizontalOfV, Y, {}}, u, FormulaVariant::AsPrinted, cfg), 5e-4);
}

TEST(LiftDifferential, HopfVerticalCaseSign) {
  const auto& e = get("E3");
  const Vec p = e.reference_point;
  const LiftSetup L = make_lift_setup(e.phi, p, cfg);
  const Frame u = L.od->decode(od_q(L, p, 0.1));
  const LiftInput in{LiftCase::HorizontalOfV, u.E.col(2), {}};
  EXPECT_LT(lift_differential_residual(L, in, u, FormulaVariant::Derived, cfg), 5e-4);
  EXPECT_GT(lift_differential_residual(L, in, u, FormulaVariant::AsPrinted, cfg), 0.1);
}

TEST(LiftDistributions, DimensionsAndKernel) {
  for (const auto& e : entries()) {
    const Vec p = e.reference_point;
    const LiftSetup L = make_lift_setup(e.phi, p, cfg);
    const LiftDistributions d = lift_distributions(L, L.od->decode(od_q(L, p, 0.1)), FormulaVariant::Derived, cfg);
    const int n = e.phi.n(), k = e.phi.k();
    EXPECT_EQ(d.dim_vertical, (n - k) + skew_dim(n - k)) << e.id;
    EXPECT_EQ(d.dim_horizontal, k + skew_dim(k)) << e.id;
    EXPECT_EQ(d.dim_total, n + skew_dim(k) + skew_dim(n - k)) << e.id;
    EXPECT_EQ(d.rank, d.dim_total) << e.id;
    EXPECT_LT(d.kernel_residual, 5e-4) << e.id;
    EXPECT_LT(d.cross_gram, 1e-6) << e.id;
  }
}

TEST(Conformality, HomothetyLiftDilatation) {
  const auto& e = get("E5");
  const Vec p = Vec::Constant(3, -0.2);
  const LiftSetup L = make_lift_setup(e.phi, p, cfg);
  const LiftConformality c = lift_conformality(L, od_q(L, p, 0.1), cfg);
  EXPECT_NEAR(c.Lambda, 4.0, 1e-6);
  EXPECT_LT(c.defect, 1e-6);
}

TEST(Conformality, HopfLiftNotConformal) {
  const auto& e = get("E3");
  const Vec p = e.reference_point;
  const LiftSetup L = make_lift_setup(e.phi, p, cfg);
  EXPECT_GT(lift_conformality(L, od_q(L, p, 0.1), cfg).defect, 0.01);
}

TEST(Conformality, OneDimensionalTargetIsAlwaysConformal) {
  // k = 1: H^{L phi} is spanned by a single vector.
  const auto& e = get("E4");
  const LiftSetup L = make_lift_setup(e.phi, Vec::Zero(2), cfg);
  EXPECT_EQ(lift_conformality(L, od_q(L, Vec::Zero(2), 0.0), cfg).defect, 0.0);
}

TEST(Tension, FlatLiftIsCircleCurvature) {
  // L phi(x, theta) = (x1, x2, R(theta)) in L(R^2) = R^2 x GL(2) with the flat Frobenius metric:
  // the SO(2) orbit has curvature 1/sqrt(2).
  const auto& e = get("E1");
  const Vec p = Vec::Constant(3, 0.1);
  const LiftSetup L = make_lift_setup(e.phi, p, cfg);
  EXPECT_NEAR(lift_tension_direct(L, od_q(L, p, 0.2), cfg), 1.0 / std::sqrt(2.0), 1e-4);
}

TEST(Classify, ProductAndHopf) {
  const auto& e2 = get("E2");
  const auto r2 = classify(e2.phi, e2.phi.source->sample(1, 4), 9, cfg);
  EXPECT_TRUE(r2.lift_conformal_predicted);
  EXPECT_EQ(r2.lift_conformal_measured, Verdict::Yes);
  EXPECT_NEAR(r2.Lambda_mean, 1.0, 1e-6);
  EXPECT_LT(r2.max_Lambda_minus_lambda, 1e-4);

  const auto& e3 = get("E3");
  const auto r3 = classify(e3.phi, e3.phi.source->sample(1, 4), 9, cfg);
  EXPECT_TRUE(r3.harmonic_morphism);
  EXPECT_FALSE(r3.lift_conformal_predicted);
  EXPECT_EQ(r3.lift_conformal_measured, Verdict::No);
}
