#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "framelift/types.hpp"

namespace framelift {

enum class Status { Pass, Fail, Inconclusive, Audit };
// Pass iff residual < tolerance (Below) or residual > tolerance (Above).
enum class Bound { Below, Above };

const char* to_string(Status s);
const char* to_string(Bound b);

struct CheckReport {
  std::string subject;  // catalog id or manifold name
  std::string suite;
  std::string check;
  std::string anchor;   // the identity being tested
  double residual = 0.0;
  double tolerance = 0.0;
  Bound bound = Bound::Below;
  Status status = Status::Fail;
  int samples = 0;
  double wall_ms = 0.0;
  bool asserted = true;
  std::string note;
};

// NaN residuals fail.
bool within(double residual, double tolerance, Bound b);

// Raised for invalid run configurations (exit status 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<std::string> examples;  // catalog ids; "all" expands
  std::vector<std::string> suites;    // suite names; "all" expands
  FDConfig cfg;
  int samples = 10;
  std::uint64_t seed = 42;
  std::string json_path;
};

const std::vector<std::string>& suite_names();
// 42 unless FRAMELIFT_SEED holds an unsigned integer.
std::uint64_t default_seed();
// Expands "all" and rejects unknown names, bad sample counts and invalid FD settings.
RunConfig normalized(const RunConfig& rc);

struct RunResult {
  std::vector<CheckReport> reports;
  int exit_code = 0;
};

// 0 iff every asserted row passes; audit rows are ignored.
int exit_code(const std::vector<CheckReport>& reports);

// Throws ConfigError before any computation if the configuration is invalid.
RunResult run(const RunConfig& rc);

double round_significant(double x, int digits = 6);
// {version, config{...}, results[...]}, stable key order. Wall times are omitted when
// include_timing is false, which makes the body reproducible.
std::string report_json(const RunConfig& rc, const std::vector<CheckReport>& reports, bool include_timing = true);
std::string format_table(const std::vector<CheckReport>& reports);

}  // namespace framelift
