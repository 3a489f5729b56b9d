#ifndef SPS_LAMBERT_HPP
#define SPS_LAMBERT_HPP

namespace sps {

/// Principal-branch Lambert W on a >= 0: the unique w >= 0 with
/// w * exp(w) = a. Relative residual at most 1e-12. Rejects a < 0.
double lambert_w0(double a);

/// r-Lambert function on the monotone regime r >= 0, a >= 0: the unique
/// w >= 0 with w * exp(w) + r * w = a. Reduces to lambert_w0 at r = 0.
double r_lambert(double r, double a);

}  // namespace sps

#endif  // SPS_LAMBERT_HPP
