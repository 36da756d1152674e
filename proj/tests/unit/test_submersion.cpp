#include <gtest/gtest.h>

#include <cmath>

#include "framelift/catalog.hpp"
#include "framelift/submersion.hpp"

using namespace framelift;

namespace {

const FDConfig cfg;

// (x, y, z) -> e^x (cos y, sin y): horizontally conformal with lambda = e^{2x}, geodesic fibres, harmonic.
SubmersionSpec exponential_map() {
  return {"exp", euclidean(3), euclidean(2, 3.0),
          [](const Vec& x) {
            Vec w(2);
            w << std::exp(x(0)) * std::cos(x(1)), std::exp(x(0)) * std::sin(x(1));
            return w;
          },
          [](const Vec& x) {
            const double r = std::exp(x(0));
            Mat J(2, 3);
            J << r * std::cos(x(1)), -r * std::sin(x(1)), 0.0, r * std::sin(x(1)), r * std::cos(x(1)), 0.0;
            return J;
          }};
}

}  // namespace

TEST(Splitting, FlatProjection) {
  const auto& e = get("E1");
  const Splitting s = splitting_projectors(e.phi, Vec::Zero(3), cfg);
  Mat V = Mat::Zero(3, 3);
  V(2, 2) = 1.0;
  EXPECT_LT((s.vertical - V).norm(), 1e-15);
  EXPECT_LT((s.horizontal + s.vertical - Mat::Identity(3, 3)).norm(), 1e-15);
}

TEST(Splitting, RankDeficientRejected) {
  SubmersionSpec flat{"collapse", euclidean(2), euclidean(2), [](const Vec& x) { return Vec(Vec::Constant(2, x(0))); },
                      [](const Vec&) { return Mat(Mat::Ones(2, 2)); }};
  EXPECT_THROW(splitting_projectors(flat, Vec::Zero(2), cfg), RankError);
}

TEST(Jacobian, HopfExactMatchesFD) {
  const auto& e = get("E3");
  const Vec p = e.reference_point;
  EXPECT_LT((jacobian(e.phi, p, cfg) - jacobian_fd(e.phi, p, 1e-6)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Dilatation, HopfIsRiemannianSubmersion) {
  const auto& e = get("E3");
  for (const Vec& p : e.phi.source->sample(3, 5)) {
    const Dilatation d = dilatation(e.phi, p, cfg);
    EXPECT_NEAR(d.lambda, 1.0, 1e-10);
    EXPECT_LT(d.defect, 1e-10);
  }
}

TEST(Dilatation, Homothety) { EXPECT_NEAR(dilatation(get("E5").phi, Vec::Zero(3), cfg).lambda, 4.0, 1e-14); }

TEST(SecondFundamentalForm, HopfMixedTermsNonzero) {
  const auto& e = get("E3");
  const Vec p = e.reference_point;
  const Vec X = horizontal_onb(e.phi, p, cfg).col(0);
  const Vec V = vertical_onb(e.phi, p, cfg).col(0);
  const Vec P = second_fundamental_form(e.phi, p, X, V, cfg);
  EXPECT_GT(std::sqrt(P.dot(metric_eval(*e.phi.target, e.phi(p)) * P)), 0.1);
  EXPECT_LT(second_fundamental_form_norm(get("E1").phi, Vec::Zero(3), cfg), 1e-12);
}

TEST(AIdentity, SignOnHopf) {
  // For Y vertical phi_* Y = 0 along the fibre, so Pi(X,Y) = -phi_*(nabla_X Y).
  const auto& e = get("E3");
  const Vec p = e.reference_point;
  const Vec X = horizontal_onb(e.phi, p, cfg).col(1);
  const Vec Y = vertical_onb(e.phi, p, cfg).col(0);
  EXPECT_LT(a_identity_residual(e.phi, p, X, Y, FormulaVariant::Derived, cfg), 5e-4);
  EXPECT_GT(a_identity_residual(e.phi, p, X, Y, FormulaVariant::AsPrinted, cfg), 0.1);
}

TEST(AIdentity, RequiresVerticalY) {
  const auto& e = get("E3");
  EXPECT_THROW(A_Y_endo(e.phi, e.reference_point, horizontal_onb(e.phi, e.reference_point, cfg).col(0), cfg),
               PreconditionError);
}

TEST(Tension, HopfIsHarmonic) {
  const auto& e = get("E3");
  const Vec t = tension_field(e.phi, e.reference_point, cfg);
  EXPECT_LT(t.norm(), 5e-4);
  EXPECT_LT(mean_curvature_fibers(e.phi, e.reference_point, cfg).norm(), 1e-6);
}

TEST(Tension, WarpedProjection) {
  // Fibres are the s-lines with H = (nabla_{e_s} e_s)^T = -d_t, so tau = -phi_* H = d_t.
  const auto& e = get("E4");
  const Vec p = Vec::Zero(2);
  EXPECT_NEAR(tension_field(e.phi, p, cfg)(0), 1.0, 5e-4);
  EXPECT_NEAR(mean_curvature_fibers(e.phi, p, cfg)(0), -1.0, 1e-6);
}

TEST(Tension, ConformalCoefficientUsesTargetDimension) {
  // tau = 0 for the holomorphic exponential. grad ln lambda = 2 d_x and phi_* d_x has length e^x, so the
  // (dim M - 2)/2 coefficient leaves a residual of exactly e^x; (dim N - 2)/2 = 0 leaves none.
  const SubmersionSpec phi = exponential_map();
  Vec p(3);
  p << 0.3, 0.4, -0.2;
  const Vec tau = tension_field(phi, p, cfg);
  EXPECT_LT(tau.norm(), 5e-4);
  EXPECT_LT((tau - tension_conformal(phi, p, TensionCoefficient::TargetDimension, cfg)).norm(), 5e-4);
  EXPECT_NEAR((tau - tension_conformal(phi, p, TensionCoefficient::SourceDimension, cfg)).norm(), std::exp(0.3), 1e-3);
  EXPECT_NEAR(dilatation(phi, p, cfg).lambda, std::exp(0.6), 1e-12);
}

TEST(Divergence, LemmaOnHopf) {
  const auto& e = get("E3");
  const Vec p = e.reference_point;
  const Mat F = horizontal_onb(e.phi, p, cfg);
  Mat c(2, 2);
  c << 0.3, -1.0, 0.7, 0.2;
  const Mat C = F * c * F.transpose() * metric_eval(*e.phi.source, p);
  EXPECT_LT(div_lemma_residual(e.phi, p, vertical_onb(e.phi, p, cfg).col(0), C, cfg), 5e-4);
}

TEST(Integrability, HopfHorizontalNotIntegrable) {
  const auto& e = get("E3");
  EXPECT_GT(horizontal_integrability_defect(e.phi, e.reference_point, cfg), 0.1);
  EXPECT_LT(horizontal_integrability_defect(get("E2").phi, get("E2").reference_point, cfg), 5e-4);
}
