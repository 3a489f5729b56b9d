#include "sps/problem.hpp"

#include <functional>

namespace sps {

const std::optional<SmoothnessInfo> FiniteSumProblem::kNoSmoothness = std::nullopt;

const std::optional<SmoothnessInfo>& FiniteSumProblem::smoothness() const {
  return kNoSmoothness;
}

double FiniteSumProblem::full_value(const Vector& x) const {
  const int n = num_components();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += component_value(i, x);
  return sum / n;
}

Vector FiniteSumProblem::full_gradient(const Vector& x) const {
  const int n = num_components();
  Vector sum = Vector::Zero(dim());
  for (int i = 0; i < n; ++i) sum += component_gradient(i, x);
  return sum / n;
}

double FiniteSumProblem::mean_infimum() const {
  const int n = num_components();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += component_infimum(i);
  return sum / n;
}

double FiniteSumProblem::batch_value(const std::vector<int>& batch, const Vector& x) const {
  double sum = 0.0;
  for (int i : batch) sum += component_value(i, x);
  return sum / static_cast<double>(batch.size());
}

Vector FiniteSumProblem::batch_gradient(const std::vector<int>& batch, const Vector& x) const {
  Vector sum = Vector::Zero(dim());
  for (int i : batch) sum += component_gradient(i, x);
  return sum / static_cast<double>(batch.size());
}

double FiniteSumProblem::batch_infimum(const std::vector<int>& batch) const {
  double sum = 0.0;
  for (int i : batch) sum += component_infimum(i);
  return sum / static_cast<double>(batch.size());
}

CallbackProblem::CallbackProblem(int n, int dim, ValueFn value, GradFn grad,
                                 std::vector<double> infima, ConvexityInfo convexity,
                                 std::optional<SmoothnessInfo> smooth, bool is_smooth_mode)
    : n_(n),
      dim_(dim),
      value_(std::move(value)),
      grad_(std::move(grad)),
      infima_(std::move(infima)),
      convexity_(convexity),
      smooth_(std::move(smooth)),
      smooth_mode_(is_smooth_mode) {
  if (n_ < 1 || dim_ < 1) throw std::invalid_argument("problem needs n >= 1, dim >= 1");
  if (static_cast<int>(infima_.size()) != n_) {
    throw std::invalid_argument("one infimum per component required");
  }
}

double CallbackProblem::component_value(int i, const Vector& x) const {
  return value_(i, x);
}

Vector CallbackProblem::component_gradient(int i, const Vector& x) const {
  return grad_(i, x);
}

double CallbackProblem::component_infimum(int i) const { return infima_.at(i); }

}  // namespace sps
