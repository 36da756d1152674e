#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "framelift/catalog.hpp"
#include "framelift/frame_bundle.hpp"

using namespace framelift;

namespace {

const FDConfig cfg;

Frame sample_frame(const ChartManifold& M, const Vec& p) {
  const int n = M.dim();
  Mat A = Mat::Identity(n, n);
  A(0, n - 1) = 0.4;
  A(n - 1, 0) = -0.2;
  return {p, reference_frame(M, p) * A};
}

}  // namespace

TEST(SkewBasis, DimensionAndRoundTrip) {
  EXPECT_EQ(skew_dim(4), 6);
  EXPECT_EQ(skew_basis(3).size(), 3u);
  Vec a(3);
  a << 0.1, -0.2, 0.3;
  EXPECT_LT((coords_from_skew(skew_from_coords(a, 3)) - a).norm(), 1e-15);
}

TEST(Lifts, HorizontalLiftHasNoVerticalPart) {
  auto S2 = sphere_stereo(2);
  const Vec p = Vec::Constant(2, 0.25);
  const Frame u = sample_frame(*S2, p);
  const FrameTangent h = horizontal_lift_frame(*S2, {p, Vec::Unit(2, 0)}, u, cfg);
  EXPECT_LT(vertical_part(*S2, h, cfg).norm(), 1e-14);
}

TEST(Lifts, FundamentalVerticalRecoversP) {
  auto S2 = sphere_stereo(2);
  const Vec p = Vec::Constant(2, -0.1);
  const Frame u = sample_frame(*S2, p);
  Mat P(2, 2);
  P << 1.0, 2.0, -0.5, 0.3;
  EXPECT_LT((vertical_part(*S2, fundamental_vertical(P, u), cfg) - P).norm(), 1e-13);
}

TEST(Mok, VerticalNormIsEndomorphismNorm) {
  // |P*|^2 = sum_i g(P u_i, P u_i).
  auto S2 = sphere_stereo(2);
  const Vec p = Vec::Constant(2, 0.2);
  const Frame u = sample_frame(*S2, p);
  Mat P(2, 2);
  P << 0.0, 1.0, 2.0, 0.5;
  const Mat g = metric_eval(*S2, p);
  double expected = 0.0;
  for (int i = 0; i < 2; ++i) expected += (P * u.E.col(i)).dot(g * P * u.E.col(i));
  EXPECT_NEAR(mok_norm(*S2, fundamental_vertical(P, u), cfg), std::sqrt(expected), 1e-13);
}

TEST(Mok, HorizontalAndVerticalOrthogonal) {
  auto S3 = sphere_stereo(3);
  const Vec p = Vec::Constant(3, 0.1);
  const Frame u = sample_frame(*S3, p);
  const FrameTangent h = horizontal_lift_frame(*S3, {p, Vec::Unit(3, 1)}, u, cfg);
  const FrameTangent v = fundamental_vertical(Mat::Random(3, 3), u);
  EXPECT_NEAR(mok_metric(*S3, h, v, cfg), 0.0, 1e-13);
}

TEST(OMChart, EncodeDecodeRoundTrip) {
  auto S3 = sphere_stereo(3);
  const OMChart chart(S3);
  Vec q(6);
  q << 0.1, -0.2, 0.05, 0.3, -0.1, 0.2;
  const Frame u = chart.decode(q);
  EXPECT_TRUE(is_orthonormal_frame(*S3, u, 1e-13));
  EXPECT_LT((chart.encode(u, cfg) - q).norm(), 1e-12);
}

TEST(OMChart, RejectsNonOrthonormalFrame) {
  auto S2 = sphere_stereo(2);
  const OMChart chart(S2);
  EXPECT_THROW(chart.encode(sample_frame(*S2, Vec::Zero(2)), cfg), PreconditionError);
}

TEST(Dexp, MatchesCentralDifference) {
  Mat A(3, 3), B(3, 3);
  A << 0, 0.3, -0.2, -0.3, 0, 0.5, 0.2, -0.5, 0;
  B << 0, 1, 0, -1, 0, 0.4, 0, -0.4, 0;
  const double h = 1e-5;
  const Mat fd = (Mat((A + h * B).exp()) - Mat((A - h * B).exp())) / (2 * h);
  EXPECT_LT((dexp(A, B) - fd).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(TotalSpace, LMChartIsTangentToItself) {
  auto S2 = sphere_stereo(2);
  auto chart = std::make_shared<LMChart>(S2);
  const Vec q = chart->encode(sample_frame(*S2, Vec::Constant(2, 0.1)));
  const FrameTangent t = fundamental_vertical(Mat::Random(2, 2), chart->decode(q));
  EXPECT_LT(chart->tangency_residual(q, t, cfg), 1e-12);
}

TEST(Brackets, SphereFormulas) {
  auto S2 = sphere_stereo(2);
  auto chart = std::make_shared<LMChart>(S2);
  const TotalSpace T(chart, cfg);
  const Vec q = chart->encode(sample_frame(*S2, Vec::Constant(2, 0.2)));
  const ConnectionInputs in = random_connection_inputs(S2, 5, false);
  EXPECT_LT(bracket_residual(T, BracketCase::HH, in, q, FormulaVariant::AsPrinted), 5e-4);
  EXPECT_LT(bracket_residual(T, BracketCase::VV, in, q, FormulaVariant::AsPrinted), 5e-4);
  // The hv bracket is +(nabla_X Q)*; the displayed minus sign does not survive the FD bracket.
  EXPECT_LT(bracket_residual(T, BracketCase::HV, in, q, FormulaVariant::Derived), 5e-4);
  EXPECT_GT(bracket_residual(T, BracketCase::HV, in, q, FormulaVariant::AsPrinted), 0.1);
}

TEST(Connection, OracleAgreesWithDerivedFormulas) {
  auto S2 = sphere_stereo(2);
  for (Bundle b : {Bundle::LM, Bundle::OM}) {
    std::shared_ptr<const BundleChart> chart;
    Vec q;
    if (b == Bundle::LM) {
      auto lm = std::make_shared<LMChart>(S2);
      q = lm->encode(sample_frame(*S2, Vec::Constant(2, -0.2)));
      chart = lm;
    } else {
      chart = std::make_shared<OMChart>(S2);
      q = Vec(3);
      q << -0.2, -0.2, 0.4;
    }
    const TotalSpace T(chart, cfg);
    const ConnectionInputs in = random_connection_inputs(S2, 11, b == Bundle::OM);
    for (const AuditRow& row : connection_audit(T, b, in, q)) {
      const bool derived_form = row.kase == "hh" || row.kase == "vv" || row.variant == "derived";
      if (derived_form) EXPECT_LT(row.residual, 5e-4) << row.bundle << " " << row.kase << " " << row.variant;
    }
  }
}
