#ifndef SPS_PROBLEMS_SOLVE_EXACT_HPP
#define SPS_PROBLEMS_SOLVE_EXACT_HPP

#include "sps/problems/classification.hpp"
#include "sps/problems/linear_system.hpp"
#include "sps/types.hpp"

namespace sps {

/// Exact-solution oracle for the convex desk-scale problems. Quadratics
/// are solved directly; logistic problems by damped full-batch Newton to
/// gradient norm <= 1e-10 (at most 200 iterations). Fills x*, f*,
/// sigma^2 = f(x*) - mean_i f_i*, smoothness / strong-convexity constants,
/// the at-optimum gradient variance z^2, mu_min and the subgradient bound
/// where they are defined for the family.
ProblemConstants solve_exact(const ErmProblem& problem);

/// Linear-system variant: x* is the projection of x0 onto the solution
/// set, and the rate constant lambda_min_plus(W) is carried over.
ProblemConstants solve_exact(const LinearSystemProblem& problem,
                             const Vector& x0);

}  // namespace sps

#endif  // SPS_PROBLEMS_SOLVE_EXACT_HPP
