#pragma once

// End-to-end checks on the bundled double heptagon (and double pentagon for
// the covolume). Shared by the acceptance test binary and `slopegap verify`.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace slopegap {

struct AcceptanceOptions {
  std::string heptagon_config;
  std::string pentagon_config;
  int threads = 1;
  int digits = 50;
  std::uint64_t seed = 20240607;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;  ///< measured values
  double seconds = 0;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);

/// One "[PASS]/[FAIL] <id> <title>: <detail>" line per criterion; true if all passed.
bool print_acceptance(std::ostream& out, const std::vector<CriterionResult>& results);

}  // namespace slopegap
