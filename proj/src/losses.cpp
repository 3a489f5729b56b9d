#include "sps/losses.hpp"

#include <cmath>

#include "sps/lambert.hpp"

namespace sps {

namespace {

// log(1 + exp(t)) without overflow.
double log1p_exp(double t) {
  if (t > 0.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

void check_dims(const LossSpec& spec, const Vector& x) {
  if (spec.feature.size() != x.size()) {
    throw std::invalid_argument("loss: feature / parameter dimension mismatch");
  }
}

double regularizer(const LossSpec& spec, const Vector& x) {
  return spec.l2_lambda > 0.0 ? 0.5 * spec.l2_lambda * x.squaredNorm() : 0.0;
}

}  // namespace

double loss_value(const LossSpec& spec, const Vector& x) {
  check_dims(spec, x);
  const double t = spec.feature.dot(x);
  switch (spec.family) {
    case LossFamily::Logistic:
      return log1p_exp(-spec.label * t) + regularizer(spec, x);
    case LossFamily::Exponential:
      return std::exp(-spec.label * t) + regularizer(spec, x);
    case LossFamily::Squared: {
      const double r = t - spec.label;
      return 0.5 * r * r + regularizer(spec, x);
    }
    case LossFamily::Hinge:
      return std::max(0.0, 1.0 - spec.label * t) + regularizer(spec, x);
  }
  throw std::logic_error("unknown loss family");
}

Vector loss_gradient(const LossSpec& spec, const Vector& x) {
  check_dims(spec, x);
  const double t = spec.feature.dot(x);
  Vector g;
  switch (spec.family) {
    case LossFamily::Logistic:
      // -b * sigmoid(-b t) * a
      g = (-spec.label * sigmoid(-spec.label * t)) * spec.feature;
      break;
    case LossFamily::Exponential:
      g = (-spec.label * std::exp(-spec.label * t)) * spec.feature;
      break;
    case LossFamily::Squared:
      g = (t - spec.label) * spec.feature;
      break;
    case LossFamily::Hinge: {
      const double margin = spec.label * t;
      if (margin < 1.0) {
        g = -spec.label * spec.feature;
      } else {
        g = Vector::Zero(x.size());  // 0 at the kink and beyond
      }
      break;
    }
    default:
      throw std::logic_error("unknown loss family");
  }
  if (spec.l2_lambda > 0.0) g += spec.l2_lambda * x;
  return g;
}

double loss_infimum(const LossSpec& spec) {
  const double norm_z = spec.feature.norm();
  switch (spec.family) {
    case LossFamily::Logistic:
      if (norm_z == 0.0) return std::log(2.0);  // constant loss
      if (spec.l2_lambda == 0.0) return 0.0;
      return fi_star_logistic_l2(norm_z, spec.l2_lambda).second;
    case LossFamily::Exponential:
      if (norm_z == 0.0) return 1.0;
      if (spec.l2_lambda == 0.0) return 0.0;
      return fi_star_exponential_l2(norm_z, spec.l2_lambda).second;
    case LossFamily::Squared: {
      const double y = spec.label;
      if (spec.l2_lambda == 0.0) return norm_z == 0.0 ? 0.5 * y * y : 0.0;
      // Ridge term: minimize along the feature direction,
      // fi* = lambda y^2 / (2 (lambda + ||a||^2)).
      return spec.l2_lambda * y * y / (2.0 * (spec.l2_lambda + norm_z * norm_z));
    }
    case LossFamily::Hinge: {
      if (spec.l2_lambda == 0.0) return norm_z == 0.0 ? 1.0 : 0.0;
      if (norm_z == 0.0) return 1.0;
      // 1-D reduction g(alpha) = max(0, 1 - alpha c) + (lambda/2) alpha^2:
      // interior minimum alpha = c/lambda when c^2 <= lambda, else the kink.
      const double c = norm_z;
      if (c * c <= spec.l2_lambda) return 1.0 - c * c / (2.0 * spec.l2_lambda);
      return spec.l2_lambda / (2.0 * c * c);
    }
  }
  throw std::logic_error("unknown loss family");
}

double loss_smoothness(const LossSpec& spec) {
  const double nsq = spec.feature.squaredNorm();
  switch (spec.family) {
    case LossFamily::Logistic:
      return 0.25 * nsq + spec.l2_lambda;
    case LossFamily::Squared:
      return nsq + spec.l2_lambda;
    case LossFamily::Exponential:
    case LossFamily::Hinge:
      // Exponential loss has no global smoothness constant; hinge is
      // non-smooth. Only the regularizer contributes a uniform bound.
      return spec.l2_lambda;
  }
  throw std::logic_error("unknown loss family");
}

std::pair<double, double> fi_star_logistic_l2(double norm_z, double lambda) {
  if (!(norm_z > 0.0) || !(lambda > 0.0)) {
    throw std::invalid_argument("fi_star_logistic_l2: requires norm_z > 0, lambda > 0");
  }
  const double c = norm_z;
  const double alpha_star = r_lambert(1.0, c * c / lambda) / c;
  const double fi_star = log1p_exp(-alpha_star * c) + 0.5 * lambda * alpha_star * alpha_star;
  return {alpha_star, fi_star};
}

std::pair<double, double> fi_star_exponential_l2(double norm_z, double lambda) {
  if (!(norm_z > 0.0) || !(lambda > 0.0)) {
    throw std::invalid_argument("fi_star_exponential_l2: requires norm_z > 0, lambda > 0");
  }
  const double c = norm_z;
  const double alpha_star = lambert_w0(c * c / lambda) / c;
  const double fi_star = std::exp(-alpha_star * c) + 0.5 * lambda * alpha_star * alpha_star;
  return {alpha_star, fi_star};
}

}  // namespace sps
