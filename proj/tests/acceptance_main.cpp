// Acceptance harness: runs every verification suite and prints one pass/fail
// line per criterion. Exits non-zero if any criterion fails.

#include "slsopt/verify/verify.hpp"

#include <cstdio>
#include <exception>

int main() {
  bool all_pass = true;
  try {
    for (const auto& suite : slsopt::verify::run_all_suites()) {
      const bool pass = suite.pass();
      all_pass = all_pass && pass;
      std::printf("[%s] criterion %d (%s)\n", pass ? "PASS" : "FAIL", suite.criterion,
                  suite.suite.c_str());
      for (const auto& c : suite.cases) {
        std::printf("    %s  %s%s%s%s\n", c.pass ? "ok  " : "FAIL", c.name.c_str(),
                    c.detail.empty() ? "" : "  [", c.detail.c_str(),
                    c.detail.empty() ? "" : "]");
      }
      std::fflush(stdout);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance harness aborted: %s\n", e.what());
    return 2;
  }
  std::printf("%s\n", all_pass ? "all criteria passed" : "SOME CRITERIA FAILED");
  return all_pass ? 0 : 1;
}
