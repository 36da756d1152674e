#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>

#include "framelift/catalog.hpp"
#include "framelift/lift.hpp"

using namespace framelift;

namespace {

const FDConfig cfg;

// E4: (t, s) with g = diag(1, e^{2t}) and D = span d_t.
const CatalogEntry& warped() { return get("E4"); }

}  // namespace

TEST(Distribution, WarpedHorizontalProjector) {
  const auto& e = warped();
  const DistributionSpec D = horizontal_distribution(e.phi, cfg);
  Vec p(2);
  p << 0.3, -0.2;
  Mat expected = Mat::Zero(2, 2);
  expected(0, 0) = 1.0;
  EXPECT_LT((D.at(p) - expected).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT(projector_residual(*e.phi.source, D, p).max(), 1e-14);
}

TEST(Blocks, ShapesAndReductiveProperty) {
  const Mat C = Mat::Random(2, 3);
  const Mat m = m_block_matrix(C);
  ASSERT_EQ(m.rows(), 5);
  EXPECT_LT((m.topRightCorner(2, 3) - C).norm(), 1e-15);
  EXPECT_LT((m.bottomLeftCorner(3, 2) + C.transpose()).norm(), 1e-15);
  EXPECT_LT(reductive_residual(5, 2, 3, 20), 1e-12);
}

TEST(SecondFundamental, WarpedClosedForm) {
  // nabla_{d_s} d_t = d_s and nabla_{d_s} d_s = -e^{2t} d_t, so S_{d_s} d_t = d_s,
  // S_{d_s} d_s = -e^{2t} d_t, and S_{d_t} = 0.
  const auto& e = warped();
  const ChartManifold& M = *e.phi.source;
  const DistributionSpec D = horizontal_distribution(e.phi, cfg);
  Vec p(2);
  p << 0.25, 0.1;
  const Vec dt = Vec::Unit(2, 0), ds = Vec::Unit(2, 1);
  EXPECT_LT((S_tensor(M, D, p, ds, dt, cfg) - ds).norm(), 1e-8);
  EXPECT_LT((S_tensor(M, D, p, ds, ds, cfg) + std::exp(2 * 0.25) * dt).norm(), 1e-8);
  EXPECT_LT(S_endo(M, D, p, dt, cfg).norm(), 1e-8);
}

TEST(W, WarpedEigenvalues) {
  // |S_{e_s}|^2 = 2 and S_{e_t} = 0, so W has eigenvalues 1 (on d_t) and 3 (on d_s).
  const auto& e = warped();
  const ChartManifold& M = *e.phi.source;
  const DistributionSpec D = horizontal_distribution(e.phi, cfg);
  Vec p(2);
  p << -0.2, 0.4;
  const Mat onb = reference_frame(M, p);
  const Mat W = W_endo(M, D, p, onb, cfg);
  EXPECT_NEAR(W(0, 0), 1.0, 1e-7);
  EXPECT_NEAR(W(1, 1), 3.0, 1e-7);
  EXPECT_NEAR(W(0, 1), 0.0, 1e-7);
  EXPECT_NEAR(W(1, 0), 0.0, 1e-7);
  const Vec v = Vec::Unit(2, 1);
  EXPECT_LT((W_inverse_apply(M, D, p, v, onb, cfg) - v / 3.0).norm(), 1e-7);
}

TEST(AdaptedLift, IdentityAndTangency) {
  const auto& e = warped();
  const ChartManifold& M = *e.phi.source;
  Vec p(2);
  p << 0.0, 0.3;
  const LiftSetup L = make_lift_setup(e.phi, p, cfg);
  Vec q(2);
  q << p;
  const Frame u = L.od->decode(q);
  EXPECT_LT(od_membership_residual(M, L.H, u), 1e-13);
  const Vec X = Vec::Constant(2, 1.0);
  const FrameTangent a = adapted_horizontal_lift(M, L.H, {p, X}, u, cfg);
  const FrameTangent b = horizontal_lift_frame(M, {p, X}, u, cfg) + fundamental_vertical(S_endo(M, L.H, p, X, cfg), u);
  EXPECT_LT((a.ambient() - b.ambient()).norm(), 1e-14);
  EXPECT_LT(od_tangency_residual(M, L.H, a, cfg), 1e-6);
  // The plain horizontal lift leaves O(D) when S_X != 0.
  EXPECT_GT(od_tangency_residual(M, L.H, horizontal_lift_frame(M, {p, X}, u, cfg), cfg), 0.1);
}

TEST(AdaptedLift, RejectsNonAdaptedFrame) {
  const auto& e = warped();
  const ChartManifold& M = *e.phi.source;
  const DistributionSpec D = horizontal_distribution(e.phi, cfg);
  const Vec p = Vec::Zero(2);
  Mat E(2, 2);
  E << 0.0, 1.0, 1.0, 0.0;  // d_s first: not adapted to D = span d_t
  EXPECT_THROW(adapted_horizontal_lift(M, D, {p, Vec::Unit(2, 0)}, {p, E}, cfg), PreconditionError);
}

TEST(Curvature, RelationWithStandardDerivativeConvention) {
  const auto& e = get("E3");
  const ChartManifold& M = *e.phi.source;
  const DistributionSpec D = horizontal_distribution(e.phi, cfg);
  const FDConfig pcfg = projector_cfg(D, cfg);
  const Vec p = e.reference_point;
  const Vec X = Vec::Unit(3, 0), Y = Vec::Unit(3, 1) + Vec::Unit(3, 2), Z = Vec::Constant(3, 0.5);
  EXPECT_LT(curvature_relation_residual(M, D, p, X, Y, Z, DerivativeConvention::Standard, pcfg), 5e-4);
  // The printed third term -S_X(nabla^D_Y Z) does not give a tensorial expression.
  EXPECT_GT(curvature_relation_residual(M, D, p, X, Y, Z, DerivativeConvention::AsPrinted, pcfg), 0.1);
}

TEST(Projections, RejectNonSkewInput) {
  const auto& e = warped();
  const DistributionSpec D = horizontal_distribution(e.phi, cfg);
  EXPECT_THROW(m_projection(*e.phi.source, Mat::Identity(2, 2), D, Vec::Zero(2), cfg), PreconditionError);
}
