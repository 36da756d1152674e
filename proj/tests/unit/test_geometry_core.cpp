#include <gtest/gtest.h>

#include <cmath>

#include "framelift/catalog.hpp"
#include "framelift/geometry_core.hpp"

using namespace framelift;

namespace {

const FDConfig cfg;

// Conformally flat metric g = e^{2f} I with f = ln 2 - ln(1 + |x|^2):
// Gamma^k_ij = delta_ik d_j f + delta_jk d_i f - delta_ij d_k f.
Christoffel conformal_oracle(const Vec& x) {
  const int n = static_cast<int>(x.size());
  const Vec df = -2.0 * x / (1.0 + x.squaredNorm());
  std::vector<Mat> up(n, Mat::Zero(n, n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        up[k](i, j) = (i == k ? df(j) : 0.0) + (j == k ? df(i) : 0.0) - (i == j ? df(k) : 0.0);
  return Christoffel(up);
}

}  // namespace

TEST(Christoffel, EuclideanVanishes) {
  auto R3 = euclidean(3);
  const Christoffel G = christoffel(*R3, Vec::Constant(3, 0.2), cfg);
  for (const Mat& U : G.upper()) EXPECT_EQ(U.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Christoffel, SphereMatchesConformalFormula) {
  auto S2 = sphere_stereo(2);
  Vec x(2);
  x << 0.3, -0.4;
  const Christoffel G = christoffel(*S2, x, cfg);
  const Christoffel O = conformal_oracle(x);
  for (int k = 0; k < 2; ++k) EXPECT_LT((G.upper()[k] - O.upper()[k]).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Christoffel, ContractIsLinearInX) {
  auto S3 = sphere_stereo(3);
  const Vec x = Vec::Constant(3, 0.1);
  const Christoffel G = christoffel(*S3, x, cfg);
  const Vec X = Vec::LinSpaced(3, 1.0, 3.0), Y = Vec::LinSpaced(3, -1.0, 0.5);
  EXPECT_LT((G.contract(X + 2.0 * Y) - G.contract(X) - 2.0 * G.contract(Y)).norm(), 1e-14);
  EXPECT_LT((G.apply(X, Y) - G.apply(Y, X)).norm(), 1e-14);
}

TEST(Curvature, SphereConstantCurvatureTensor) {
  // R(X,Y)Z = K (g(Y,Z) X - g(X,Z) Y) with K = 1 on the unit sphere.
  auto S3 = sphere_stereo(3);
  Vec p(3);
  p << 0.2, -0.1, 0.3;
  const Mat g = metric_eval(*S3, p);
  const Vec X = Vec::Unit(3, 0) + 0.5 * Vec::Unit(3, 2), Y = Vec::Unit(3, 1), Z = Vec::Constant(3, 1.0);
  const Vec R = curvature(*S3, p, X, Y, Z, cfg);
  const Vec expected = Y.dot(g * Z) * X - X.dot(g * Z) * Y;
  EXPECT_LT((R - expected).norm(), 1e-6);
}

TEST(Curvature, SectionalCurvatures) {
  Vec p(2);
  p << 0.2, 0.1;
  EXPECT_NEAR(sectional_curvature(*sphere_stereo(2), p, Vec::Unit(2, 0), Vec::Unit(2, 1), cfg), 1.0, 1e-6);
  // Radius 1/2: K = 4.
  EXPECT_NEAR(sectional_curvature(*sphere_stereo(2, 0.25), p, Vec::Unit(2, 0), Vec::Unit(2, 1), cfg), 4.0, 1e-5);
  // dt^2 + e^{2t} ds^2 is the hyperbolic plane.
  EXPECT_NEAR(sectional_curvature(*warped_plane(), p, Vec::Unit(2, 0), Vec::Unit(2, 1), cfg), -1.0, 1e-6);
}

TEST(Curvature, DependentVectorsRejected) {
  auto S2 = sphere_stereo(2);
  EXPECT_THROW(sectional_curvature(*S2, Vec::Zero(2), Vec::Unit(2, 0), 2.0 * Vec::Unit(2, 0), cfg), RankError);
}

TEST(CovariantDerivative, RadialFieldOnEuclideanSpace) {
  auto R2 = euclidean(2);
  const VectorField radial([](const Vec& x) { return x; }, [](const Vec& x) { return Mat(Mat::Identity(2, 2)); });
  const Vec X(Vec::Unit(2, 1));
  EXPECT_LT((covariant_derivative(*R2, Vec::Zero(2), X, radial, cfg) - X).norm(), 1e-14);
}

TEST(CovariantDerivative, FiniteDifferenceWhenNoJacobian) {
  auto S2 = sphere_stereo(2);
  const Vec p = Vec::Constant(2, 0.2);
  const VectorField exact([](const Vec& x) { return Vec(x.array().square()); },
                          [](const Vec& x) { return Mat(2.0 * x.asDiagonal()); });
  const VectorField plain([](const Vec& x) { return Vec(x.array().square()); });
  const Vec X = Vec::Constant(2, 1.0);
  EXPECT_LT((covariant_derivative(*S2, p, X, exact, cfg) - covariant_derivative(*S2, p, X, plain, cfg)).norm(), 1e-8);
}

TEST(GramSchmidt, OrthonormalInMetric) {
  auto S2 = sphere_stereo(2);
  const Vec p = Vec::Constant(2, 0.3);
  Mat seed(2, 2);
  seed << 1.0, 1.0, 0.0, 2.0;
  const Mat E = gram_schmidt(*S2, p, seed);
  EXPECT_LT(orthonormality_residual(metric_eval(*S2, p), E), 1e-14);
}

TEST(GramSchmidt, DependentSeedRejected) {
  Mat seed(2, 2);
  seed << 1.0, 2.0, 1.0, 2.0;
  EXPECT_THROW(gram_schmidt(Mat(Mat::Identity(2, 2)), seed), RankError);
}

TEST(EndoInner, TraceFormInEuclideanBasis) {
  const Mat g = Mat::Identity(3, 3);
  const Mat P = Mat::Random(3, 3), Q = Mat::Random(3, 3);
  EXPECT_NEAR(endo_inner(g, P, Q, g), (P.transpose() * Q).trace(), 1e-14);
}

TEST(Skew, AdjointAndSkewness) {
  auto S2 = sphere_stereo(2);
  const Vec p = Vec::Constant(2, 0.4);
  const Mat g = metric_eval(*S2, p);
  const Mat F = reference_frame(*S2, p);
  Mat A(2, 2);
  A << 0.0, 1.0, -1.0, 0.0;
  EXPECT_TRUE(is_skew(g, F * A * F.transpose() * g, 1e-12));
  EXPECT_FALSE(is_skew(g, Mat(Mat::Identity(2, 2)), 1e-12));
}

TEST(Domain, OutsideChartThrows) {
  auto S2 = sphere_stereo(2);
  EXPECT_THROW(S2->require(Vec::Constant(2, 20.0)), DomainError);
}

TEST(FDConfig, Validation) {
  FDConfig c;
  EXPECT_NO_THROW(c.validate());
  c.step_h2 = 1e-7;
  EXPECT_THROW(c.validate(), PreconditionError);
  FDConfig d;
  d.tol_fd1 = 1.0;
  EXPECT_THROW(d.validate(), PreconditionError);
}

TEST(Sampling, DeterministicAndInBox) {
  auto S2 = sphere_stereo(2);
  const auto a = S2->sample(7, 5), b = S2->sample(7, 5);
  ASSERT_EQ(a.size(), 5u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i], b[i]);
    EXPECT_LE(a[i].cwiseAbs().maxCoeff(), 0.6);
  }
}
