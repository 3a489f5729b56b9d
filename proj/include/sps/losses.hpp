#ifndef SPS_LOSSES_HPP
#define SPS_LOSSES_HPP

#include <utility>

#include "sps/types.hpp"

namespace sps {

enum class LossFamily { Logistic, Exponential, Squared, Hinge };

/// One loss term: a surrogate-loss family applied to a single example
/// (feature, label) plus an optional l2 term (lambda/2)*||x||^2. For the
/// squared family `label` is the regression target y_i; for the others it
/// is the binary label in {-1, +1}.
struct LossSpec {
  LossFamily family = LossFamily::Logistic;
  double l2_lambda = 0.0;
  Vector feature;
  double label = 1.0;
};

double loss_value(const LossSpec& spec, const Vector& x);

/// Gradient (subgradient for hinge; 0 is chosen at the kink, so the margin
/// == 1 case returns just the regularizer term).
Vector loss_gradient(const LossSpec& spec, const Vector& x);

/// Closed-form infimum of the loss term. Zero for unregularized surrogate
/// losses; Lambert-path values for l2-regularized logistic / exponential;
/// direct quadratic formulas for squared and hinge.
double loss_infimum(const LossSpec& spec);

/// Smoothness constant of the term (hinge is non-smooth; returns the
/// regularizer's lambda for it, callers must not rely on it).
double loss_smoothness(const LossSpec& spec);

/// Minimizing radius and infimum of the l2-regularized logistic term with
/// feature norm ||z_i|| = norm_z: alpha* = (1/c) W_1(c^2/lambda) with
/// c = norm_z, and fi* = log(1 + exp(-alpha* c)) + (lambda/2) alpha*^2.
std::pair<double, double> fi_star_logistic_l2(double norm_z, double lambda);

/// Same for the exponential loss, through the plain Lambert W:
/// alpha* = (1/c) W_0(c^2/lambda), fi* = exp(-alpha* c) + (lambda/2) alpha*^2.
std::pair<double, double> fi_star_exponential_l2(double norm_z, double lambda);

}  // namespace sps

#endif  // SPS_LOSSES_HPP
