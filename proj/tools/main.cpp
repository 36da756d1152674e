#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "framelift/catalog.hpp"
#include "framelift/report.hpp"

using namespace framelift;

int main(int argc, char** argv) {
  CLI::App app{"Frame-bundle and submersion-lift verification runner"};
  app.require_subcommand(1);

  CLI::App* list = app.add_subcommand("list", "List catalog entries");

  CLI::App* verify = app.add_subcommand("verify", "Run verification suites on catalog entries");
  // --h is a step size, so help is long-form only.
  verify->set_help_flag("--help", "Print this help message and exit");
  RunConfig rc;
  rc.seed = default_seed();
  std::string example;
  std::string suite = "all";
  verify->add_option("example", example, "Catalog id or 'all'")->required();
  verify->add_option("--suite", suite, "core, tangent, frame, adapted, lift, theorems or all");
  verify->add_option("--h", rc.cfg.step_h, "First-level FD step");
  verify->add_option("--h2", rc.cfg.step_h2, "Second-level FD step");
  verify->add_option("--tol-exact", rc.cfg.tol_exact, "Tolerance for exact identities");
  verify->add_option("--tol-fd1", rc.cfg.tol_fd1, "Tolerance for one FD level");
  verify->add_option("--tol-fd2", rc.cfg.tol_fd2, "Tolerance for two FD levels");
  verify->add_option("--samples", rc.samples, "Sample points per check");
  verify->add_option("--seed", rc.seed, "Seed (default: FRAMELIFT_SEED or 42)");
  verify->add_option("--json", rc.json_path, "Write the JSON report to this path");
  bool quiet = false;
  verify->add_flag("--quiet", quiet, "Print only the summary line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*list) {
    for (const auto& e : entries()) std::printf("%-3s %-22s %s\n", e.id.c_str(), e.name.c_str(), e.description.c_str());
    return 0;
  }

  rc.examples = {example};
  rc.suites = {suite};
  RunResult result;
  RunConfig cfg;
  try {
    cfg = normalized(rc);
    result = run(cfg);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }

  if (!quiet) std::cout << format_table(result.reports);
  int pass = 0, fail = 0, inconclusive = 0, audit = 0;
  for (const auto& r : result.reports) {
    switch (r.status) {
      case Status::Pass: ++pass; break;
      case Status::Fail: ++fail; break;
      case Status::Inconclusive: ++inconclusive; break;
      case Status::Audit: ++audit; break;
    }
  }
  std::printf("%d pass, %d fail, %d inconclusive, %d audit\n", pass, fail, inconclusive, audit);

  if (!cfg.json_path.empty()) {
    std::ofstream out(cfg.json_path);
    if (!out) {
      std::fprintf(stderr, "cannot write %s\n", cfg.json_path.c_str());
      return 2;
    }
    out << report_json(cfg, result.reports) << "\n";
  }
  return result.exit_code;
}
