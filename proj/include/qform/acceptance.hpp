#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qform {

struct CriterionResult {
  std::string id;  // "1" .. "12", sub-checks as "9a" etc.
  std::string title;
  bool pass = false;
  // Fails for a reason recorded as unattainable; reported, not hidden.
  bool documented_failure = false;
  std::string measured;
  double seconds = 0;
};

struct VerifyOptions {
  int threads = 1;
  unsigned long long seed = 20240601;
};

// Suites: local (1, 2, 4, 5), counting (3, 10), transform (8, 9), sieve (6, 7, 11, 12), all.
bool valid_suite(const std::string& suite);
std::vector<CriterionResult> run_acceptance(const std::string& suite, const VerifyOptions& opts = {},
                                            std::ostream* live = nullptr);
std::string format_result(const CriterionResult& r);

}  // namespace qform
