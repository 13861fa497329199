// Acceptance suite: one PASS/FAIL line per criterion; exits non-zero on any failure.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "hardylab/acceptance.hpp"

int main(int argc, char** argv) {
  hardylab::SuiteOptions opts;
  opts.cli_path = HARDYLAB_CLI_PATH;
  if (argc > 1) opts.seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  hardylab::run_acceptance(opts, [&](const hardylab::CriterionResult& r) {
    std::cout << hardylab::format_result(r) << std::endl;
    if (!r.pass) ++failed;
  });
  std::cout << (failed == 0 ? "acceptance: all criteria passed"
                            : "acceptance: " + std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
