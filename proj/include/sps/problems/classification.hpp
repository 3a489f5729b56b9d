#ifndef SPS_PROBLEMS_CLASSIFICATION_HPP
#define SPS_PROBLEMS_CLASSIFICATION_HPP

#include <memory>

#include "sps/losses.hpp"
#include "sps/problem.hpp"
#include "sps/types.hpp"

namespace sps {

/// Finite sum of per-example loss terms sharing one family and
/// regularization strength. Features are stored as rows of a dense matrix;
/// per-component infima are precomputed at construction.
class ErmProblem final : public FiniteSumProblem {
 public:
  ErmProblem(LossFamily family, Matrix features, Vector labels,
             double l2_lambda, ConvexityInfo convexity);

  int num_components() const override { return static_cast<int>(features_.rows()); }
  int dim() const override { return static_cast<int>(features_.cols()); }
  double component_value(int i, const Vector& x) const override;
  Vector component_gradient(int i, const Vector& x) const override;
  double component_infimum(int i) const override { return infima_[i]; }
  ConvexityInfo convexity() const override { return convexity_; }
  const std::optional<SmoothnessInfo>& smoothness() const override { return smooth_; }
  bool is_smooth() const override { return family_ != LossFamily::Hinge; }

  LossFamily family() const { return family_; }
  double l2_lambda() const { return l2_lambda_; }
  const Matrix& features() const { return features_; }
  const Vector& labels() const { return labels_; }

 private:
  LossFamily family_;
  Matrix features_;
  Vector labels_;
  double l2_lambda_;
  ConvexityInfo convexity_;
  std::vector<double> infima_;
  std::optional<SmoothnessInfo> smooth_;
};

struct SyntheticOptions {
  double label_noise = 0.1;  // label flip probability
};

/// Sparse binary classification with the logistic loss: features are
/// Bernoulli(sparsity)-masked standard Gaussians, labels come from a
/// planted Gaussian separator with label_noise flips. lambda > 0 gives the
/// l2-regularized problem with Lambert-path infima; lambda = 0 keeps all
/// infima at zero (generation requires full-rank features in that case so
/// the objective has a finite strongly convex minimizer).
ErmProblem generate_synthetic_classification(int n, int d, double sparsity,
                                             double lambda, std::uint64_t seed,
                                             const SyntheticOptions& opts = {});

/// Ridge least squares (1/2)(<a_i,x> - y_i)^2 + (lambda/2)||x||^2 on
/// Gaussian features with targets y = A x_planted + noise. noise = 0 and
/// lambda = 0 gives the realizable interpolated instance.
ErmProblem generate_least_squares(int n, int d, double lambda, double noise,
                                  std::uint64_t seed);

struct HingeInstance {
  std::shared_ptr<ErmProblem> problem;
  Vector x_star;    // planted separator scaled to minimum margin 1
  double g_bound;   // max_i ||a_i||, a valid subgradient norm bound
};

/// Separable unregularized hinge problem: labels from a planted separator,
/// features resampled until every margin clears margin_min, then the
/// separator is rescaled so the minimum margin is exactly 1 (hence
/// f(x_star) = 0 and interpolation holds).
HingeInstance generate_separable_hinge(int n, int d, double margin_min,
                                       std::uint64_t seed);

}  // namespace sps

#endif  // SPS_PROBLEMS_CLASSIFICATION_HPP
