#include "sps/problems/classification.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "sps/sampler.hpp"

namespace sps {

namespace {

LossSpec spec_for(LossFamily family, const Matrix& features, const Vector& labels,
                  double lambda, int i) {
  LossSpec spec;
  spec.family = family;
  spec.l2_lambda = lambda;
  spec.feature = features.row(i).transpose();
  spec.label = labels[i];
  return spec;
}

}  // namespace

ErmProblem::ErmProblem(LossFamily family, Matrix features, Vector labels,
                       double l2_lambda, ConvexityInfo convexity)
    : family_(family),
      features_(std::move(features)),
      labels_(std::move(labels)),
      l2_lambda_(l2_lambda),
      convexity_(convexity) {
  const int n = static_cast<int>(features_.rows());
  if (n < 1 || features_.cols() < 1) throw std::invalid_argument("erm: empty feature matrix");
  if (labels_.size() != n) throw std::invalid_argument("erm: label count mismatch");
  if (l2_lambda_ < 0.0) throw std::invalid_argument("erm: negative regularization");

  infima_.resize(n);
  SmoothnessInfo info;
  info.per_component.resize(n);
  for (int i = 0; i < n; ++i) {
    const LossSpec spec = spec_for(family_, features_, labels_, l2_lambda_, i);
    infima_[i] = loss_infimum(spec);
    info.per_component[i] = loss_smoothness(spec);
  }
  if (family_ != LossFamily::Hinge) {
    info.l_max = *std::max_element(info.per_component.begin(), info.per_component.end());
    smooth_ = std::move(info);
  }
}

double ErmProblem::component_value(int i, const Vector& x) const {
  return loss_value(spec_for(family_, features_, labels_, l2_lambda_, i), x);
}

Vector ErmProblem::component_gradient(int i, const Vector& x) const {
  return loss_gradient(spec_for(family_, features_, labels_, l2_lambda_, i), x);
}

ErmProblem generate_synthetic_classification(int n, int d, double sparsity,
                                             double lambda, std::uint64_t seed,
                                             const SyntheticOptions& opts) {
  if (n < 1 || d < 1) throw std::invalid_argument("synthetic: n, d >= 1");
  if (!(sparsity > 0.0) || sparsity > 1.0) {
    throw std::invalid_argument("synthetic: sparsity must lie in (0, 1]");
  }
  if (lambda < 0.0) throw std::invalid_argument("synthetic: negative lambda");
  if (opts.label_noise < 0.0 || opts.label_noise >= 0.5) {
    throw std::invalid_argument("synthetic: label noise must lie in [0, 0.5)");
  }

  CounterRng rng(seed, /*stream=*/11);
  Vector separator(d);
  for (int j = 0; j < d; ++j) separator[j] = rng.next_gaussian();

  Matrix features = Matrix::Zero(n, d);
  Vector labels(n);
  for (int i = 0; i < n; ++i) {
    // Rows are resampled until non-empty so no component degenerates to a
    // constant loss.
    double row_norm_sq = 0.0;
    do {
      row_norm_sq = 0.0;
      for (int j = 0; j < d; ++j) {
        const bool active = rng.next_double() < sparsity;
        features(i, j) = active ? rng.next_gaussian() : 0.0;
        row_norm_sq += features(i, j) * features(i, j);
      }
    } while (row_norm_sq == 0.0);
    const double margin = features.row(i).dot(separator);
    double label = margin >= 0.0 ? 1.0 : -1.0;
    if (rng.next_double() < opts.label_noise) label = -label;
    labels[i] = label;
  }

  if (lambda == 0.0) {
    // Without a regularizer the finite strongly convex minimizer requires
    // full-rank features (and the label noise supplied above).
    Eigen::ColPivHouseholderQR<Matrix> qr(features);
    if (qr.rank() < d) {
      throw std::invalid_argument(
          "synthetic: feature matrix is rank-deficient; unregularized objective "
          "is not strongly convex");
    }
  }

  const ConvexityInfo convexity = lambda > 0.0 ? ConvexityInfo::strongly_convex(lambda)
                                               : ConvexityInfo::convex();
  return ErmProblem(LossFamily::Logistic, std::move(features), std::move(labels),
                    lambda, convexity);
}

ErmProblem generate_least_squares(int n, int d, double lambda, double noise,
                                  std::uint64_t seed) {
  if (n < 1 || d < 1) throw std::invalid_argument("least_squares: n, d >= 1");
  CounterRng rng(seed, /*stream=*/13);
  Matrix features(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) features(i, j) = rng.next_gaussian();
  Vector planted(d);
  for (int j = 0; j < d; ++j) planted[j] = rng.next_gaussian();
  Vector targets = features * planted;
  if (noise > 0.0) {
    for (int i = 0; i < n; ++i) targets[i] += noise * rng.next_gaussian();
  }

  const Matrix hessian = features.transpose() * features / n;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(hessian);
  const double mu = eig.eigenvalues().minCoeff() + lambda;
  const ConvexityInfo convexity = mu > 0.0 ? ConvexityInfo::strongly_convex(mu)
                                           : ConvexityInfo::convex();
  return ErmProblem(LossFamily::Squared, std::move(features), std::move(targets),
                    lambda, convexity);
}

HingeInstance generate_separable_hinge(int n, int d, double margin_min,
                                       std::uint64_t seed) {
  if (n < 1 || d < 1) throw std::invalid_argument("hinge: n, d >= 1");
  if (!(margin_min > 0.0)) throw std::invalid_argument("hinge: margin_min must be positive");
  CounterRng rng(seed, /*stream=*/17);
  Vector separator(d);
  for (int j = 0; j < d; ++j) separator[j] = rng.next_gaussian();

  Matrix features(n, d);
  Vector labels(n);
  double min_margin = kInf;
  for (int i = 0; i < n; ++i) {
    double raw = 0.0;
    Vector row(d);
    do {
      for (int j = 0; j < d; ++j) row[j] = rng.next_gaussian();
      raw = row.dot(separator);
    } while (std::abs(raw) < margin_min);
    features.row(i) = row.transpose();
    labels[i] = raw >= 0.0 ? 1.0 : -1.0;
    min_margin = std::min(min_margin, std::abs(raw));
  }

  HingeInstance instance;
  // Rescale the separator so every margin clears 1 with a small safety
  // factor; then every hinge term vanishes exactly at x_star (in floating
  // point too) and interpolation holds.
  instance.x_star = separator * ((1.0 + 1e-6) / min_margin);
  instance.g_bound = 0.0;
  for (int i = 0; i < n; ++i) {
    instance.g_bound = std::max(instance.g_bound, features.row(i).norm());
  }
  instance.problem = std::make_shared<ErmProblem>(
      LossFamily::Hinge, std::move(features), std::move(labels), 0.0,
      ConvexityInfo::convex());
  return instance;
}

}  // namespace sps
