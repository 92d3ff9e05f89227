// The acceptance suite: every check the build must pass, with its tolerance
// pinned in code. Shared by the `validate` CLI scenario and the test suite.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace becgate {

struct CriterionResult {
  int index;
  std::string name;
  bool passed;
  std::string detail;  // measured vs expected, with the tolerance
};

std::vector<CriterionResult> run_acceptance_criteria();

// One line per criterion; returns the number of failures.
int print_acceptance_report(std::ostream& out, const std::vector<CriterionResult>& results);

}  // namespace becgate
