#include "sps/stepsize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sps {

StepResult sps(double fi_val, double fi_star, double grad_norm_sq, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("sps: c must be positive");
  const double gap = fi_val - fi_star;
  if (gap < -1e-12) {
    std::ostringstream msg;
    msg << "sps: component value " << fi_val << " below its declared infimum " << fi_star;
    throw OracleInconsistency(msg.str());
  }
  if (grad_norm_sq <= kStationaryGradTol) {
    if (gap <= kStationaryGapTol) {
      return {0.0, true};  // component already minimized; skip the step
    }
    std::ostringstream msg;
    msg << "sps: vanishing gradient (" << grad_norm_sq << ") but gap to infimum is " << gap;
    throw OracleInconsistency(msg.str());
  }
  return {std::max(gap, 0.0) / (c * grad_norm_sq), false};
}

StepResult sps_max(double fi_val, double fi_star, double grad_norm_sq,
                   double c, double gamma_b) {
  if (!(gamma_b > 0.0)) throw std::invalid_argument("sps_max: gamma_b must be positive");
  StepResult r = sps(fi_val, fi_star, grad_norm_sq, c);
  if (!r.skipped) r.gamma = std::min(r.gamma, gamma_b);
  return r;
}

double smoothed_bound_update(double prev_gamma, double tau, int b, int n) {
  if (!(prev_gamma > 0.0)) {
    throw std::invalid_argument("smoothed_bound_update: previous gamma must be positive");
  }
  if (b < 1 || b > n) throw std::invalid_argument("smoothed_bound_update: need 1 <= b <= n");
  return std::pow(tau, static_cast<double>(b) / static_cast<double>(n)) * prev_gamma;
}

StepResult deterministic_polyak(double f_val, double f_star, double subgrad_norm_sq) {
  return sps(f_val, f_star, subgrad_norm_sq, 1.0);
}

std::pair<double, double> sps_bounds(double c, double l_i, double mu_i) {
  if (!(c > 0.0) || !(l_i > 0.0)) {
    throw std::invalid_argument("sps_bounds: c and L_i must be positive");
  }
  if (mu_i < 0.0) throw std::invalid_argument("sps_bounds: mu_i must be nonnegative");
  const double lower = 1.0 / (2.0 * c * l_i);
  const double upper = mu_i > 0.0 ? 1.0 / (2.0 * c * mu_i) : kInf;
  return {lower, upper};
}

}  // namespace sps
