#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace cptforge {

struct LawResult {
  std::string suite;
  std::string name;
  std::string statement;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::string suite = "all";
  std::uint64_t seed = 42;
  unsigned resolution = 400;
  std::size_t samples = 100000;
};

bool is_known_suite(const std::string& suite);

// Runs the selected suites: "golden" (the blood-pressure/medicine worked
// example, exact), "exact" (rational-layer laws, zero tolerance),
// "stochastic" (quadrature and Monte Carlo laws, fixed seeds) or "all".
// Output depends only on the options.
std::vector<LawResult> run_verify(const VerifyOptions& options);

std::string render_report(const std::vector<LawResult>& results);
bool all_passed(const std::vector<LawResult>& results);

}  // namespace cptforge
