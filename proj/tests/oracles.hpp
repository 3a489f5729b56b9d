// Test-only reference oracles, deliberately independent of the library's
// solver paths: bisection for the transcendental roots, 1-D Newton /
// dense grids for the component infima, central differences for
// gradients, and a plain least-squares slope fit for rate regressions.
#ifndef SPS_TESTS_ORACLES_HPP
#define SPS_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

// Root of w e^w + r w = a on [0, inf) by pure bisection to 1e-14.
inline double bisect_lambert(double r, double a) {
  if (a == 0.0) return 0.0;
  auto h = [&](double w) { return w * std::exp(w) + r * w - a; };
  double lo = 0.0, hi = 1.0;
  while (h(hi) < 0.0) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * (1.0 + hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Minimizer of g(alpha) = log(1 + exp(-alpha c)) + (lambda/2) alpha^2 by
// safeguarded 1-D Newton on g'.
inline double newton_min_logistic(double c, double lambda) {
  auto gp = [&](double alpha) {
    return -c / (1.0 + std::exp(alpha * c)) + lambda * alpha;
  };
  auto gpp = [&](double alpha) {
    const double e = std::exp(alpha * c);
    const double s = e / ((1.0 + e) * (1.0 + e));
    return c * c * s + lambda;
  };
  double lo = 0.0, hi = c / (2.0 * lambda) + 1.0;
  while (gp(hi) < 0.0) hi *= 2.0;
  double alpha = 0.5 * hi;
  for (int i = 0; i < 200; ++i) {
    const double d = gp(alpha);
    if (std::abs(d) < 1e-14 * (1.0 + lambda * std::abs(alpha))) break;
    (d < 0.0 ? lo : hi) = alpha;
    double next = alpha - d / gpp(alpha);
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    alpha = next;
  }
  return alpha;
}

inline double g_logistic(double alpha, double c, double lambda) {
  const double t = alpha * c;
  const double soft = t > 0.0 ? std::log1p(std::exp(-t)) : -t + std::log1p(std::exp(t));
  return soft + 0.5 * lambda * alpha * alpha;
}

inline double newton_min_exponential(double c, double lambda) {
  auto gp = [&](double alpha) { return -c * std::exp(-alpha * c) + lambda * alpha; };
  auto gpp = [&](double alpha) { return c * c * std::exp(-alpha * c) + lambda; };
  double lo = 0.0, hi = 1.0;
  while (gp(hi) < 0.0) hi *= 2.0;
  double alpha = 0.5 * hi;
  for (int i = 0; i < 200; ++i) {
    const double d = gp(alpha);
    if (std::abs(d) < 1e-14 * (1.0 + lambda * std::abs(alpha))) break;
    (d < 0.0 ? lo : hi) = alpha;
    double next = alpha - d / gpp(alpha);
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    alpha = next;
  }
  return alpha;
}

inline double g_exponential(double alpha, double c, double lambda) {
  return std::exp(-alpha * c) + 0.5 * lambda * alpha * alpha;
}

// Dense-grid minimum of a 1-D function on [0, hi] with the given stride.
inline double grid_min(const std::function<double(double)>& f, double hi, double stride) {
  double best = f(0.0);
  for (double alpha = stride; alpha <= hi; alpha += stride) {
    best = std::min(best, f(alpha));
  }
  return best;
}

// Ordinary least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_slope: need matching samples");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracles

#endif  // SPS_TESTS_ORACLES_HPP
