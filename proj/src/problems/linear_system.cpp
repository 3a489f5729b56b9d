#include "sps/problems/linear_system.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "sps/sampler.hpp"
#include "sps/stepsize.hpp"

namespace sps {

LinearSystemProblem::LinearSystemProblem(Matrix a, Vector b)
    : a_(std::move(a)), b_(std::move(b)) {
  const int m = static_cast<int>(a_.rows());
  if (m < 1 || a_.cols() < 1) throw std::invalid_argument("linear system: empty matrix");
  if (b_.size() != m) throw std::invalid_argument("linear system: b size mismatch");

  frob_sq_ = a_.squaredNorm();
  if (!(frob_sq_ > 0.0)) throw std::invalid_argument("linear system: zero matrix");
  row_norms_sq_.resize(m);
  probs_.resize(m);
  for (int i = 0; i < m; ++i) {
    row_norms_sq_[i] = a_.row(i).squaredNorm();
    if (!(row_norms_sq_[i] > 0.0)) {
      throw std::invalid_argument("linear system: zero row " + std::to_string(i));
    }
    probs_[i] = row_norms_sq_[i] / frob_sq_;
  }

  // Consistency: the least-squares residual must vanish.
  const Vector x_ls = a_.colPivHouseholderQr().solve(b_);
  consistency_residual_ = (a_ * x_ls - b_).norm();
  if (consistency_residual_ > 1e-10) {
    throw std::invalid_argument("linear system is inconsistent (residual " +
                                std::to_string(consistency_residual_) + ")");
  }

  // lambda_min^+ of W = A^T A / ||A||_F^2 by dense eigensolve.
  Eigen::SelfAdjointEigenSolver<Matrix> eig(w());
  const auto& vals = eig.eigenvalues();
  const double cutoff = 1e-12 * std::max(vals.maxCoeff(), 1.0);
  lambda_min_plus_ = 0.0;
  for (int j = 0; j < vals.size(); ++j) {
    if (vals[j] > cutoff) {
      lambda_min_plus_ = vals[j];
      break;
    }
  }

  // f_i = (A_i x - b_i)^2 / (2 ||A_i||^2) has Hessian A_i^T A_i / ||A_i||^2,
  // so every component has smoothness constant exactly 1.
  SmoothnessInfo info;
  info.per_component.assign(m, 1.0);
  info.l_max = 1.0;
  smooth_ = info;
}

double LinearSystemProblem::component_value(int i, const Vector& x) const {
  const double r = a_.row(i).dot(x) - b_[i];
  return r * r / (2.0 * row_norms_sq_[i]);
}

Vector LinearSystemProblem::component_gradient(int i, const Vector& x) const {
  const double r = a_.row(i).dot(x) - b_[i];
  return (r / row_norms_sq_[i]) * a_.row(i).transpose();
}

Matrix LinearSystemProblem::w() const { return a_.transpose() * a_ / frob_sq_; }

Vector LinearSystemProblem::project_onto_solutions(const Vector& x) const {
  // x* = x - A^+(Ax - b): the minimum-norm correction onto {y : Ay = b}.
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a_);
  return x - cod.solve(a_ * x - b_);
}

LinearSystemProblem generate_linear_system(int m, int d, std::uint64_t seed) {
  if (m < 1 || d < 1) throw std::invalid_argument("generate_linear_system: m, d >= 1");
  CounterRng rng(seed, /*stream=*/7);
  Matrix a(m, d);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = rng.next_gaussian();
  Vector planted(d);
  for (int j = 0; j < d; ++j) planted[j] = rng.next_gaussian();
  Vector b = a * planted;
  return LinearSystemProblem(std::move(a), std::move(b));
}

std::pair<Vector, double> kaczmarz_sps_step(const LinearSystemProblem& problem,
                                            const Vector& x, int i) {
  if (i < 0 || i >= problem.num_components()) {
    throw std::invalid_argument("kaczmarz_sps_step: row index out of range");
  }
  const double val = problem.component_value(i, x);
  const Vector grad = problem.component_gradient(i, x);
  const StepResult step = sps(val, /*fi_star=*/0.0, grad.squaredNorm(), /*c=*/0.5);
  if (step.skipped) return {x, 0.0};  // already on the hyperplane
  return {x - step.gamma * grad, step.gamma};
}

}  // namespace sps
