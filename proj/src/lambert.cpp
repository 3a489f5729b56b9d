#include "sps/lambert.hpp"

#include <cmath>
#include <stdexcept>

namespace sps {

namespace {

// Root of h(w) = w e^w + r w - a on w >= 0, for r >= 0, a >= 0. h is
// strictly increasing and convex there, h(0) = -a <= 0, so the root is
// unique. Safeguarded Newton from w0 = log(1 + a) (an upper bound on the
// root) with a bisection fallback.
double solve_monotone(double r, double a) {
  if (a == 0.0) return 0.0;

  double lo = 0.0;
  double hi = std::log1p(a);
  auto h = [&](double w) { return w * std::exp(w) + r * w - a; };
  auto hp = [&](double w) { return (1.0 + w) * std::exp(w) + r; };

  // log1p(a) >= root already; widen defensively if rounding says otherwise.
  while (h(hi) < 0.0) hi = hi * 2.0 + 1.0;

  double w = hi;
  const double tol = 1e-13 * std::max(1.0, a);
  for (int iter = 0; iter < 200; ++iter) {
    const double hv = h(w);
    if (std::abs(hv) <= tol) return w;
    if (hv > 0.0) {
      hi = w;
    } else {
      lo = w;
    }
    double next = w - hv / hp(w);
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    if (next == w) return w;
    w = next;
  }
  return w;
}

}  // namespace

double lambert_w0(double a) {
  if (!(a >= 0.0)) {
    throw std::invalid_argument("lambert_w0: argument must be nonnegative");
  }
  return solve_monotone(0.0, a);
}

double r_lambert(double r, double a) {
  if (!(r >= 0.0) || !(a >= 0.0)) {
    throw std::invalid_argument("r_lambert: requires r >= 0 and a >= 0");
  }
  return solve_monotone(r, a);
}

}  // namespace sps
