#include "sps/problems/solve_exact.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace sps {

namespace {

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

// Damped full-batch Newton for the (possibly regularized) logistic
// objective; converges to gradient norm 1e-10 or throws.
Vector newton_logistic(const ErmProblem& problem) {
  const int n = problem.num_components();
  const int d = problem.dim();
  const Matrix& a = problem.features();
  const Vector& b = problem.labels();
  const double lambda = problem.l2_lambda();

  Vector x = Vector::Zero(d);
  for (int iter = 0; iter < 200; ++iter) {
    const Vector t = a * x;
    Vector grad = lambda * x;
    Matrix hess = lambda * Matrix::Identity(d, d);
    double value = 0.5 * lambda * x.squaredNorm();
    for (int i = 0; i < n; ++i) {
      const double m = b[i] * t[i];
      const double s = sigmoid(-m);
      grad += (-b[i] * s / n) * a.row(i).transpose();
      hess += (s * (1.0 - s) / n) * (a.row(i).transpose() * a.row(i));
      value += (m > 0.0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m))) / n;
    }
    if (grad.norm() <= 1e-10) return x;

    const Vector direction = hess.ldlt().solve(-grad);
    const double slope = grad.dot(direction);
    double step = 1.0;
    for (int ls = 0; ls < 60; ++ls) {
      const Vector cand = x + step * direction;
      if (problem.full_value(cand) <= value + 0.25 * step * slope) break;
      step *= 0.5;
    }
    x += step * direction;
  }
  if (problem.full_gradient(x).norm() <= 1e-10) return x;
  throw std::runtime_error("solve_exact: Newton did not reach gradient norm 1e-10 "
                           "within 200 iterations");
}

void fill_variance_constants(const ErmProblem& problem, ProblemConstants& out) {
  const int n = problem.num_components();
  const Vector mean_grad = problem.full_gradient(out.x_star);
  double z_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    z_sq += (problem.component_gradient(i, out.x_star) - mean_grad).squaredNorm();
  }
  out.z_sq = z_sq / n;
}

}  // namespace

ProblemConstants solve_exact(const ErmProblem& problem) {
  const int n = problem.num_components();
  const int d = problem.dim();
  const Matrix& a = problem.features();
  const double lambda = problem.l2_lambda();
  ProblemConstants out;

  const Matrix cov = a.transpose() * a / n;
  Eigen::SelfAdjointEigenSolver<Matrix> cov_eig(cov);
  const double cov_min = cov_eig.eigenvalues().minCoeff();
  const double cov_max = cov_eig.eigenvalues().maxCoeff();

  switch (problem.family()) {
    case LossFamily::Squared: {
      const Matrix hess = cov + lambda * Matrix::Identity(d, d);
      const Vector rhs = a.transpose() * problem.labels() / n;
      out.x_star = hess.ldlt().solve(rhs);
      out.mu = cov_min + lambda;
      out.l = cov_max + lambda;
      break;
    }
    case LossFamily::Logistic: {
      out.x_star = newton_logistic(problem);
      out.l = 0.25 * cov_max + lambda;
      if (lambda > 0.0) {
        // The global strong-convexity lower bound; conservative but valid
        // in every bound formula.
        out.mu = lambda;
      } else {
        const Vector t = a * out.x_star;
        Matrix hess = Matrix::Zero(d, d);
        for (int i = 0; i < n; ++i) {
          const double s = sigmoid(-problem.labels()[i] * t[i]);
          hess += (s * (1.0 - s) / n) * (a.row(i).transpose() * a.row(i));
        }
        // Local estimate at x*; only meaningful on a neighborhood.
        out.mu = Eigen::SelfAdjointEigenSolver<Matrix>(hess).eigenvalues().minCoeff();
      }
      break;
    }
    default:
      throw std::invalid_argument(
          "solve_exact: only squared and logistic families are supported");
  }

  out.f_star = problem.full_value(out.x_star);
  out.sigma_sq = std::max(out.f_star - problem.mean_infimum(), 0.0);
  if (problem.smoothness()) out.l_max = problem.smoothness()->l_max;
  out.mu_min = lambda;
  fill_variance_constants(problem, out);
  return out;
}

ProblemConstants solve_exact(const LinearSystemProblem& problem, const Vector& x0) {
  ProblemConstants out;
  out.x_star = problem.project_onto_solutions(x0);
  out.f_star = 0.0;
  out.sigma_sq = 0.0;
  out.lambda_min_plus_w = problem.lambda_min_plus();
  out.l_max = 1.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(problem.w());
  out.l = eig.eigenvalues().maxCoeff();
  out.mu = problem.lambda_min_plus();
  return out;
}

}  // namespace sps
