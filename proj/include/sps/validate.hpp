#ifndef SPS_VALIDATE_HPP
#define SPS_VALIDATE_HPP

#include <string>
#include <vector>

#include "sps/problem.hpp"

namespace sps {

struct ValidationIssue {
  enum class Kind { InfimumViolated, GradientMismatch, FullValueMismatch };
  Kind kind;
  int component = -1;  // -1 for full-objective checks
  Vector probe;
  double detail = 0.0;  // violation magnitude
  std::string message;
};

struct ValidationOptions {
  int num_probes = 5;
  double probe_scale = 1.0;
  double fd_step = 1e-6;
  double fd_rel_tol = 1e-5;
  std::uint64_t seed = 0x5eed5eedULL;
  // Components above this count are checked on a random subset.
  int max_components_checked = 200;
};

/// Report-only diagnostic pass over a problem's oracles: declared infima
/// against probed values, component and full gradients against central
/// finite differences, and full_value against the component mean.
/// Gradient checks are skipped for non-smooth problems.
std::vector<ValidationIssue> validate_problem(const FiniteSumProblem& problem,
                                              const ValidationOptions& opts = {});

std::string format_report(const std::vector<ValidationIssue>& issues);

}  // namespace sps

#endif  // SPS_VALIDATE_HPP
