#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sqg {

// One deterministic property check: measured error against a fixed bound.
// Everything here is seeded, so repeated runs print identical tables.
struct VerifyCheck {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
};

std::vector<VerifyCheck> verify_core_suite();
std::vector<VerifyCheck> verify_lp_suite();
std::vector<VerifyCheck> verify_solver_suite();

// Runs the named suite ("core", "lp", "solver", "all"), prints the pass/fail
// table to out.  Returns 0 iff every check passes; unknown suite names report
// to err and return 1.
int run_verify(const std::string& suite, std::ostream& out, std::ostream& err);

}  // namespace sqg
