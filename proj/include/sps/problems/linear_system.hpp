#ifndef SPS_PROBLEMS_LINEAR_SYSTEM_HPP
#define SPS_PROBLEMS_LINEAR_SYSTEM_HPP

#include <memory>
#include <utility>

#include "sps/problem.hpp"
#include "sps/types.hpp"

namespace sps {

/// Consistent linear system Ax = b with the row-sampled stochastic
/// reformulation: component i is f_i(x) = (A_i x - b_i)^2 / (2||A_i||^2),
/// drawn with probability p_i = ||A_i||^2 / ||A||_F^2, so that
/// W = E[A^T H A] = A^T A / ||A||_F^2.
class LinearSystemProblem final : public FiniteSumProblem {
 public:
  LinearSystemProblem(Matrix a, Vector b);

  int num_components() const override { return static_cast<int>(a_.rows()); }
  int dim() const override { return static_cast<int>(a_.cols()); }
  double component_value(int i, const Vector& x) const override;
  Vector component_gradient(int i, const Vector& x) const override;
  double component_infimum(int) const override { return 0.0; }
  ConvexityInfo convexity() const override { return ConvexityInfo::convex(); }
  const std::optional<SmoothnessInfo>& smoothness() const override { return smooth_; }

  const Matrix& a() const { return a_; }
  const Vector& b() const { return b_; }
  const std::vector<double>& row_probabilities() const { return probs_; }
  Matrix w() const;  // A^T A / ||A||_F^2
  double lambda_min_plus() const { return lambda_min_plus_; }

  /// Projection of x onto the solution set {y : Ay = b} (the x* of the
  /// convergence theorem for a run started at x).
  Vector project_onto_solutions(const Vector& x) const;

  /// Least-squares residual ||A x_ls - b||; at most 1e-10 for a system
  /// accepted by the constructor.
  double consistency_residual() const { return consistency_residual_; }

 private:
  Matrix a_;
  Vector b_;
  std::vector<double> probs_;
  std::vector<double> row_norms_sq_;
  double frob_sq_ = 0.0;
  double lambda_min_plus_ = 0.0;
  double consistency_residual_ = 0.0;
  std::optional<SmoothnessInfo> smooth_;
};

/// Random Gaussian A with a planted solution, so the system is consistent
/// by construction.
LinearSystemProblem generate_linear_system(int m, int d, std::uint64_t seed);

/// One step of SGD with SPS (c = 1/2, f_i* = 0) on the stochastic
/// reformulation, i.e. the randomized Kaczmarz projection onto hyperplane
/// i. The step size goes through the generic SPS formula and equals 1.
std::pair<Vector, double> kaczmarz_sps_step(const LinearSystemProblem& problem,
                                            const Vector& x, int i);

}  // namespace sps

#endif  // SPS_PROBLEMS_LINEAR_SYSTEM_HPP
