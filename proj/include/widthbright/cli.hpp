#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace wb::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kInfeasible = 3,
  kNumericalFailure = 4,
};

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  int n_theta = 32;
  int n_phi = 64;
  int lmax = -1;  // -1: derive from the inputs
  std::uint64_t seed = 0;
  std::string out;
  std::map<std::string, double> tol;

  // verify-theorem
  double start_scale = 0.5;
  int max_iterations = 500;
  int max_odd_degree = 5;

  double tolerance(const std::string& key) const;
};

// Defaults for --tol KEY=VAL.
const std::map<std::string, double>& default_tolerances();

// Entry point shared by the widthbright binary and the tests. Returns one of
// the exit codes above.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wb::cli
