#ifndef SYMIND_CLI_REPORTS_HPP
#define SYMIND_CLI_REPORTS_HPP

#include <string>
#include <vector>

#include "symind/example_solvable.hpp"

namespace symind {

struct SuiteConfig {
  std::string suite;
  std::uint64_t seed = 42;
  int samples = 200;
  double tol = 1e-6;
  double fd_step = 1e-5;
  int n_max = 8;
  std::string format = "text";  // "text" or "json"
};

struct CheckResult {
  std::string name;
  std::string status;  // "pass", "fail" or "skip"
  double residual_max = 0.0;
  std::string expected;
  std::string observed;
};

struct SuiteReport {
  std::string suite;
  SuiteConfig config;
  std::vector<CheckResult> checks;
  double wall_time_ms = 0.0;

  bool all_passed() const;
};

std::vector<std::string> list_suite_names();
std::string suite_description(const std::string& name);

/// Deterministic given the config. Throws std::invalid_argument for an
/// unknown suite name.
SuiteReport run_suite(const SuiteConfig& config);

/// 17-significant-digit serialization (shortest round-trip is not enough for
/// the bit-identical report contract).
std::string format_double(double x);
/// wall_time_ms is serialized as 0 so identical configs give identical bytes;
/// the text format carries the measured timing.
std::string to_json(const SuiteReport& report);
std::string to_text(const SuiteReport& report);

}  // namespace symind

#endif
