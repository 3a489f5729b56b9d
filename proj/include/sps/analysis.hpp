#ifndef SPS_ANALYSIS_HPP
#define SPS_ANALYSIS_HPP

#include <string>
#include <vector>

#include "sps/types.hpp"

namespace sps {

enum class Theorem {
  StronglyConvex,   // distance recursion, c >= 1/2
  Convex,           // averaged-iterate gap, c = 1
  PL,               // suboptimality recursion
  NonConvex,        // min gradient norm under the growth condition
  LinearSystem,     // (1 - lambda_min_plus)^k contraction
  NonSmooth,        // G ||x0 - x*|| / sqrt(K) on the averaged iterate
};

/// Everything a closed-form bound evaluator needs: the theorem tag, the
/// problem constants, the rule parameters and the start-point quantities.
struct BoundSpec {
  Theorem theorem = Theorem::StronglyConvex;
  ProblemConstants constants;
  double c = 0.5;
  double gamma_b = kInf;
  double dist0_sq = 0.0;         // ||x0 - x*||^2
  double f0_minus_fstar = 0.0;   // f(x0) - f*
  double rho = 0.0;              // growth-condition constants
  double delta = 0.0;

  double alpha() const;  // min{1/(2 c L_max), gamma_b}
  double nu() const;     // PL rate factor
  double zeta() const;   // non-convex denominator
  double gamma_b_bar() const;  // non-convex cap threshold

  /// Enforces the theorem's parameter preconditions; throws
  /// std::invalid_argument naming the violated inequality.
  void validate() const;
};

double bound_strongly_convex(long k, const BoundSpec& spec);
double bound_convex(long k_horizon, const BoundSpec& spec);
double bound_pl(long k, const BoundSpec& spec);
double bound_nonconvex(long k_horizon, const BoundSpec& spec);
double bound_linear_system(long k, const BoundSpec& spec);
double bound_nonsmooth(long k_horizon, const BoundSpec& spec);

/// Dispatch on spec.theorem.
double evaluate_bound(long k, const BoundSpec& spec);

enum class Quantity { DistSq, Suboptimality, MinGradSq, AvgIterateSuboptimality };

/// The sample-path quantity each theorem bounds.
Quantity quantity_for(Theorem theorem);

struct BoundCheckReport {
  bool pass = false;
  long first_violation_k = -1;
  // (k, seed-mean of the quantity, bound value) per compared iteration.
  struct Point { long k; double mean; double bound; };
  std::vector<Point> margin_curve;
  std::string theorem_name;
};

/// Seed-ensemble verification of a bound: the mean of the matched quantity
/// over >= 2 trajectories must stay below (1 + slack) * bound at every
/// recorded k. Trajectories must share the recording grid.
BoundCheckReport check_bound(const std::vector<Trajectory>& trajectories,
                             const BoundSpec& spec, Quantity quantity,
                             double slack);

std::string report_to_json(const BoundCheckReport& report, const BoundSpec& spec);

const char* theorem_name(Theorem theorem);

}  // namespace sps

#endif  // SPS_ANALYSIS_HPP
