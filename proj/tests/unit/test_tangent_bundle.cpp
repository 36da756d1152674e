#include <gtest/gtest.h>

#include "framelift/catalog.hpp"
#include "framelift/tangent_bundle.hpp"

using namespace framelift;

namespace {
const FDConfig cfg;
}

TEST(ConnectionMap, KillsHorizontalAndRecoversVertical) {
  auto S2 = sphere_stereo(2);
  const Vec p = Vec::Constant(2, 0.3);
  const TMPoint Z{p, Vec::Unit(2, 1)};
  const Vec X = Vec::Unit(2, 0) - Vec::Unit(2, 1);
  EXPECT_LT(connection_map_K(*S2, tm_horizontal_lift(*S2, {p, X}, Z, cfg), cfg).norm(), 1e-15);
  EXPECT_LT((connection_map_K(*S2, tm_vertical_lift({p, X}, Z), cfg) - X).norm(), 1e-15);
  const TMSplit s = split(*S2, tm_horizontal_lift(*S2, {p, X}, Z, cfg) + tm_vertical_lift({p, 2 * X}, Z), cfg);
  EXPECT_LT((s.horizontal - X).norm(), 1e-15);
  EXPECT_LT((s.vertical - 2 * X).norm(), 1e-14);
}

TEST(Sasaki, NormOfLifts) {
  auto S2 = sphere_stereo(2);
  const Vec p = Vec::Constant(2, -0.2);
  const Mat g = metric_eval(*S2, p);
  const TMPoint Z{p, Vec::Unit(2, 0)};
  const Vec X = Vec::Unit(2, 1);
  EXPECT_NEAR(sasaki_mok_norm(*S2, tm_horizontal_lift(*S2, {p, X}, Z, cfg), cfg), std::sqrt(X.dot(g * X)), 1e-14);
}

TEST(FrameProjection, LemmaAndSubmersion) {
  auto S3 = sphere_stereo(3);
  const Vec p = Vec::Constant(3, 0.1);
  Frame u{p, reference_frame(*S3, p) * (Mat::Identity(3, 3) + 0.2 * Mat::Ones(3, 3))};
  for (int i = 0; i < 3; ++i) {
    EXPECT_LT(pi_i_lemma_residual(*S3, i, u, Vec::Unit(3, 0), Mat::Random(3, 3), cfg), 1e-12);
    EXPECT_LT(pi_i_submersion_residual(*S3, i, u, cfg), 1e-10);
  }
}

TEST(SecondDifferential, FlatProjectionIsExact) {
  const auto& e = get("E1");
  const Vec p = Vec::Constant(3, 0.2);
  const TMPoint Z{p, Vec::LinSpaced(3, 1.0, 2.0)};
  for (LiftKind k : {LiftKind::Vertical, LiftKind::Horizontal})
    EXPECT_LT(phi_second_differential_residual(e.phi, k, {p, Vec::Unit(3, 2)}, Z, cfg), 1e-9);
}

TEST(SecondDifferential, HopfCases) {
  const auto& e = get("E3");
  const Vec p = e.reference_point;
  const TMPoint Z{p, Vec::LinSpaced(3, -1.0, 1.0)};
  for (LiftKind k : {LiftKind::Vertical, LiftKind::Horizontal})
    EXPECT_LT(phi_second_differential_residual(e.phi, k, {p, Vec::Constant(3, 0.7)}, Z, cfg), 5e-4);
}

TEST(Distributions, HopfNeedsVerticalExtension) {
  const auto& e = get("E3");
  const TMPoint Z{e.reference_point, Vec::LinSpaced(3, 0.5, -0.5)};
  const TMDistributions v = thm_kn_distributions(e.phi, Z, Extension::Vertical, cfg);
  EXPECT_EQ(v.vertical.size(), 2u);
  EXPECT_EQ(v.horizontal.size(), 4u);
  EXPECT_LT(v.kernel_residual, 5e-4);
  EXPECT_LT(v.cross_gram, 1e-6);
  const TMDistributions c = thm_kn_distributions(e.phi, Z, Extension::Constant, cfg);
  EXPECT_GT(c.kernel_residual, 0.1);
}
