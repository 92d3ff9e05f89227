// Acceptance suite: prints one pass/fail line per criterion and exits nonzero
// if any fails.
#include <iostream>

#include "becgate/validate.hpp"

int main() {
  const auto results = becgate::run_acceptance_criteria();
  const int failures = becgate::print_acceptance_report(std::cout, results);
  return failures == 0 ? 0 : 1;
}
