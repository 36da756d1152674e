#include "framelift/report.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "framelift/catalog.hpp"
#include "framelift/suites.hpp"

namespace framelift {

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
    case Status::Audit: return "audit";
  }
  return "?";
}

const char* to_string(Bound b) { return b == Bound::Below ? "<" : ">"; }

bool within(double residual, double tolerance, Bound b) {
  if (std::isnan(residual)) return false;
  return b == Bound::Below ? residual < tolerance : residual > tolerance;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"core", "tangent", "frame", "adapted", "lift", "theorems"};
  return names;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("FRAMELIFT_SEED");
  if (!env || !*env) return 42;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') return 42;
  return static_cast<std::uint64_t>(v);
}

RunConfig normalized(const RunConfig& rc) {
  RunConfig out = rc;
  try {
    rc.cfg.validate();
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  if (rc.samples < 1) throw ConfigError("samples must be positive");

  const std::vector<std::string> known = ids();
  out.examples.clear();
  if (rc.examples.empty()) throw ConfigError("no example given");
  for (const auto& id : rc.examples) {
    if (id == "all") {
      out.examples = known;
      break;
    }
    if (std::find(known.begin(), known.end(), id) == known.end()) throw ConfigError("unknown example: " + id);
    out.examples.push_back(id);
  }
  out.suites.clear();
  const std::vector<std::string> requested = rc.suites.empty() ? std::vector<std::string>{"all"} : rc.suites;
  for (const auto& s : requested) {
    if (s == "all") {
      out.suites = suite_names();
      break;
    }
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw ConfigError("unknown suite: " + s);
    out.suites.push_back(s);
  }
  return out;
}

int exit_code(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    if (r.asserted && r.status != Status::Pass) return 1;
  return 0;
}

RunResult run(const RunConfig& rc) {
  const RunConfig cfg = normalized(rc);
  RunResult out;
  for (const auto& id : cfg.examples) {
    const CatalogEntry& e = get(id);
    for (const auto& s : cfg.suites)
      for (auto& r : run_suite(e, s, cfg.samples, cfg.seed, cfg.cfg)) out.reports.push_back(std::move(r));
  }
  out.exit_code = exit_code(out.reports);
  return out;
}

double round_significant(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
  return std::strtod(buf, nullptr);
}

std::string report_json(const RunConfig& rc, const std::vector<CheckReport>& reports, bool include_timing) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["version"] = "0.1.0";
  ordered_json c;
  c["h"] = rc.cfg.step_h;
  c["h2"] = rc.cfg.step_h2;
  c["tol_exact"] = rc.cfg.tol_exact;
  c["tol_fd1"] = rc.cfg.tol_fd1;
  c["tol_fd2"] = rc.cfg.tol_fd2;
  c["seed"] = rc.seed;
  c["samples"] = rc.samples;
  c["examples"] = rc.examples;
  c["suites"] = rc.suites;
  j["config"] = c;
  ordered_json results = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json o;
    o["example"] = r.subject;
    o["suite"] = r.suite;
    o["check"] = r.check;
    o["anchor"] = r.anchor;
    if (std::isfinite(r.residual))
      o["residual"] = round_significant(r.residual);
    else
      o["residual"] = nullptr;
    o["comparison"] = to_string(r.bound);
    o["tolerance"] = r.tolerance;
    o["status"] = to_string(r.status);
    o["asserted"] = r.asserted;
    o["samples"] = r.samples;
    if (include_timing) o["wall_ms"] = round_significant(r.wall_ms, 3);
    if (!r.note.empty()) o["note"] = r.note;
    results.push_back(std::move(o));
  }
  j["results"] = std::move(results);
  return j.dump(2);
}

std::string format_table(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  char line[512];
  std::snprintf(line, sizeof line, "%-4s %-9s %-13s %-12s %-2s %-9s %s\n", "ex", "suite", "status", "residual", "", "tol",
                "check");
  os << line;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-4s %-9s %-13s %-12.6g %-2s %-9.3g %s\n", r.subject.c_str(), r.suite.c_str(),
                  to_string(r.status), r.residual, to_string(r.bound), r.tolerance, r.check.c_str());
    os << line;
    if (!r.note.empty()) os << "                                                   note: " << r.note << "\n";
  }
  return os.str();
}

}  // namespace framelift
