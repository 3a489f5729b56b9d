#ifndef SPS_STEPSIZE_HPP
#define SPS_STEPSIZE_HPP

#include <utility>

#include "sps/types.hpp"

namespace sps {

// Stationarity tolerances for the 0/0 case: a component with gradient and
// gap both below these is treated as already minimized and the step is
// skipped.
inline constexpr double kStationaryGradTol = 1e-14;
inline constexpr double kStationaryGapTol = 1e-14;

struct StepResult {
  double gamma = 0.0;
  bool skipped = false;  // stationary-component sentinel
};

/// Polyak ratio for one sampled component:
/// gamma = (f_i(x) - f_i*) / (c ||grad f_i(x)||^2).
/// Throws OracleInconsistency when the gradient vanishes but the declared
/// infimum is not met.
StepResult sps(double fi_val, double fi_star, double grad_norm_sq, double c);

/// SPS capped at gamma_b. gamma_b = +inf reproduces sps() bit-for-bit.
StepResult sps_max(double fi_val, double fi_star, double grad_norm_sq,
                   double c, double gamma_b);

/// Iteration-dependent cap for the smoothed rule: tau^(b/n) * prev_gamma.
/// prev_gamma must be the step actually taken on the previous iteration.
double smoothed_bound_update(double prev_gamma, double tau, int b, int n);

/// Full-objective Polyak step (f(x) - f*) / ||g||^2 for the deterministic
/// subgradient method.
StepResult deterministic_polyak(double f_val, double f_star,
                                double subgrad_norm_sq);

/// Analytic bracket on SPS for a mu_i-strongly-convex, L_i-smooth
/// component: [1/(2 c L_i), 1/(2 c mu_i)]; upper bound is +inf at mu_i = 0.
std::pair<double, double> sps_bounds(double c, double l_i, double mu_i);

}  // namespace sps

#endif  // SPS_STEPSIZE_HPP
