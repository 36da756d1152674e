#include <gtest/gtest.h>

#include <set>

#include "framelift/catalog.hpp"

using namespace framelift;

TEST(Catalog, IdsUniqueAndOrdered) {
  const auto v = ids();
  EXPECT_EQ(v, (std::vector<std::string>{"E1", "E2", "E3", "E4", "E5"}));
  EXPECT_EQ(std::set<std::string>(v.begin(), v.end()).size(), v.size());
}

TEST(Catalog, UnknownIdThrows) { EXPECT_THROW(get("bogus"), PreconditionError); }

TEST(Catalog, ConsistencyRejectsContradictions) {
  CatalogEntry e = get("E3");
  e.expected.lift_conformal = true;
  e.expected.Lambda = 1.0;
  e.expected.lift_harmonic_morphism = true;
  EXPECT_THROW(check_consistency(e), PreconditionError);

  CatalogEntry f = get("E2");
  f.expected.lift_harmonic_morphism = false;
  EXPECT_THROW(check_consistency(f), PreconditionError);
}

TEST(Catalog, ExactMetricDerivativesMatchFD) {
  const FDConfig cfg;
  for (const auto& e : entries()) {
    for (auto M : {e.phi.source, e.phi.target}) {
      for (const Vec& p : M->sample(5, 3)) {
        const auto dg = M->metric_derivative(p, cfg);
        for (int k = 0; k < M->dim(); ++k) {
          const Mat fdk = fd::partial([&](const Vec& x) { return M->metric_raw(x); }, p, k, 1e-5);
          EXPECT_LT((dg[k] - fdk).cwiseAbs().maxCoeff(), 1e-6) << e.id << " " << M->name();
        }
      }
    }
  }
}

TEST(Catalog, HopfMapsFibresToPoints) {
  // The Hopf circle through a point: (z1, z2) -> (e^{it} z1, e^{it} z2). In the chart its tangent is vertical.
  const auto& e = get("E3");
  const Vec p = e.reference_point;
  const Mat J = hopf_jacobian(p);
  EXPECT_EQ(J.rows(), 2);
  EXPECT_EQ(J.cols(), 3);
  const Vec w = hopf_map(p);
  EXPECT_TRUE(e.phi.target->contains(w));
}

TEST(Catalog, CompositeFactors) {
  const auto& e = get("E5");
  ASSERT_EQ(e.factors.size(), 2u);
  const Vec p = Vec::Constant(3, 0.3);
  EXPECT_LT((e.factors[1](e.factors[0](p)) - e.phi(p)).norm(), 1e-15);
}
