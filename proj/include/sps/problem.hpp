#ifndef SPS_PROBLEM_HPP
#define SPS_PROBLEM_HPP

#include <functional>
#include <memory>
#include <optional>

#include "sps/types.hpp"

namespace sps {

/// A finite sum f(x) = (1/n) sum_i f_i(x) exposed through per-component
/// value / gradient / infimum oracles. Oracles are deterministic pure
/// functions of (i, x); implementations must be immutable after
/// construction so problems can be shared across concurrent runs.
class FiniteSumProblem {
 public:
  virtual ~FiniteSumProblem() = default;

  virtual int num_components() const = 0;
  virtual int dim() const = 0;

  virtual double component_value(int i, const Vector& x) const = 0;
  /// Gradient of f_i at x; a subgradient when is_smooth() is false.
  virtual Vector component_gradient(int i, const Vector& x) const = 0;
  /// f_i* = inf_x f_i(x), precomputed at construction time.
  virtual double component_infimum(int i) const = 0;

  double full_value(const Vector& x) const;
  Vector full_gradient(const Vector& x) const;
  double mean_infimum() const;

  virtual const std::optional<SmoothnessInfo>& smoothness() const;
  virtual ConvexityInfo convexity() const = 0;
  virtual bool is_smooth() const { return true; }

  /// Mean value / gradient over a batch of component indices, treated as a
  /// single sampled component by the step-size rules.
  double batch_value(const std::vector<int>& batch, const Vector& x) const;
  Vector batch_gradient(const std::vector<int>& batch, const Vector& x) const;
  double batch_infimum(const std::vector<int>& batch) const;

 protected:
  static const std::optional<SmoothnessInfo> kNoSmoothness;
};

/// Finite sum assembled from per-component closures; used by generators
/// and tests that do not need a dedicated problem class.
class CallbackProblem final : public FiniteSumProblem {
 public:
  using ValueFn = std::function<double(int, const Vector&)>;
  using GradFn = std::function<Vector(int, const Vector&)>;

  CallbackProblem(int n, int dim, ValueFn value, GradFn grad,
                  std::vector<double> infima, ConvexityInfo convexity,
                  std::optional<SmoothnessInfo> smooth = std::nullopt,
                  bool is_smooth_mode = true);

  int num_components() const override { return n_; }
  int dim() const override { return dim_; }
  double component_value(int i, const Vector& x) const override;
  Vector component_gradient(int i, const Vector& x) const override;
  double component_infimum(int i) const override;
  const std::optional<SmoothnessInfo>& smoothness() const override { return smooth_; }
  ConvexityInfo convexity() const override { return convexity_; }
  bool is_smooth() const override { return smooth_mode_; }

 private:
  int n_;
  int dim_;
  ValueFn value_;
  GradFn grad_;
  std::vector<double> infima_;
  ConvexityInfo convexity_;
  std::optional<SmoothnessInfo> smooth_;
  bool smooth_mode_;
};

}  // namespace sps

#endif  // SPS_PROBLEM_HPP
