#pragma once

#include <string>
#include <vector>

namespace slsopt::verify {

struct CaseResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  int criterion = 0;   // position in the acceptance list
  std::string suite;   // descriptive id, e.g. "step-bounds"
  std::vector<CaseResult> cases;

  bool pass() const {
    for (const auto& c : cases)
      if (!c.pass) return false;
    return true;
  }
};

/// Descriptive ids of the acceptance suites, in criterion order.
std::vector<std::string> suite_names();

/// Runs one suite by id; throws std::invalid_argument for an unknown id.
SuiteResult run_suite(const std::string& name);

/// Runs every suite in criterion order.
std::vector<SuiteResult> run_all_suites();

}  // namespace slsopt::verify
