#include <gtest/gtest.h>

#include <cstdlib>

#include "framelift/report.hpp"
#include "framelift/suites.hpp"

using namespace framelift;

TEST(Report, RoundSignificant) {
  EXPECT_DOUBLE_EQ(round_significant(1.23456789e-7), 1.23457e-7);
  EXPECT_DOUBLE_EQ(round_significant(0.0), 0.0);
}

TEST(Report, WithinBounds) {
  EXPECT_TRUE(within(1e-7, 1e-6, Bound::Below));
  EXPECT_FALSE(within(1e-6, 1e-6, Bound::Below));
  EXPECT_TRUE(within(0.5, 0.01, Bound::Above));
  EXPECT_FALSE(within(std::nan(""), 1.0, Bound::Below));
}

TEST(Report, ConfigValidation) {
  RunConfig rc;
  rc.examples = {"bogus"};
  EXPECT_THROW(normalized(rc), ConfigError);
  rc.examples = {"E1"};
  rc.suites = {"nope"};
  EXPECT_THROW(normalized(rc), ConfigError);
  rc.suites = {"all"};
  rc.samples = 0;
  EXPECT_THROW(normalized(rc), ConfigError);
  rc.samples = 3;
  rc.cfg.tol_fd2 = 1e-12;
  EXPECT_THROW(normalized(rc), ConfigError);
  rc.cfg = FDConfig{};
  const RunConfig n = normalized(rc);
  EXPECT_EQ(n.suites.size(), suite_names().size());
}

TEST(Report, ExitCodeIgnoresAudit) {
  CheckReport a;
  a.asserted = false;
  a.status = Status::Audit;
  CheckReport p;
  p.status = Status::Pass;
  EXPECT_EQ(exit_code({a, p}), 0);
  CheckReport i;
  i.status = Status::Inconclusive;
  EXPECT_EQ(exit_code({a, p, i}), 1);
}

TEST(Report, DeterministicBody) {
  RunConfig rc;
  rc.examples = {"E3"};
  rc.suites = {"lift", "theorems"};
  rc.samples = 3;
  const RunConfig n = normalized(rc);
  const std::string a = report_json(n, run(n).reports, false);
  const std::string b = report_json(n, run(n).reports, false);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("\"version\""), std::string::npos);
  EXPECT_EQ(a.find("wall_ms"), std::string::npos);
}

TEST(Report, FlatCoreSuitePasses) {
  RunConfig rc;
  rc.examples = {"E1"};
  rc.suites = {"core"};
  const RunResult r = run(rc);
  EXPECT_EQ(r.exit_code, 0);
  for (const auto& c : r.reports) EXPECT_LT(c.residual, 1e-6) << c.check;
}

TEST(Report, HopfTheoremsSuitePasses) {
  RunConfig rc;
  rc.examples = {"E3"};
  rc.suites = {"theorems"};
  const RunResult r = run(rc);
  EXPECT_EQ(r.exit_code, 0);
}

TEST(Report, SeedFromEnvironment) {
  ::setenv("FRAMELIFT_SEED", "123", 1);
  EXPECT_EQ(default_seed(), 123u);
  ::setenv("FRAMELIFT_SEED", "x", 1);
  EXPECT_EQ(default_seed(), 42u);
  ::unsetenv("FRAMELIFT_SEED");
  EXPECT_EQ(default_seed(), 42u);
}
