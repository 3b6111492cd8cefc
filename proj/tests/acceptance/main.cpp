#include <iostream>

#include "qform/acceptance.hpp"

// Runs every acceptance criterion and prints one line each. Failures flagged as
// documented (recorded as unattainable) are reported but do not fail the run.
int main(int argc, char** argv) {
  std::string suite = argc > 1 ? argv[1] : "all";
  if (!qform::valid_suite(suite)) {
    std::cerr << "unknown suite " << suite << "\n";
    return 1;
  }
  auto results = qform::run_acceptance(suite, {}, &std::cout);
  int pass = 0, documented = 0, failed = 0;
  for (const auto& r : results) {
    if (r.pass)
      ++pass;
    else if (r.documented_failure)
      ++documented;
    else
      ++failed;
  }
  std::cout << pass << " pass, " << documented << " documented failure, " << failed << " fail\n";
  return failed == 0 ? 0 : 1;
}
