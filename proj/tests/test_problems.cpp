#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "sps/problems/classification.hpp"
#include "sps/problems/linear_system.hpp"
#include "sps/problems/matrix_factorization.hpp"
#include "sps/problems/solve_exact.hpp"
#include "sps/sampler.hpp"
#include "sps/validate.hpp"
#include "oracles.hpp"

using sps::Matrix;
using sps::Vector;

TEST_CASE("1x1 linear system metadata") {
  Matrix a(1, 1);
  a << 2.0;
  Vector b(1);
  b << 6.0;  // planted x = 3
  const sps::LinearSystemProblem problem(a, b);
  CHECK(problem.row_probabilities() == std::vector<double>{1.0});
  CHECK(problem.lambda_min_plus() == doctest::Approx(1.0));
  CHECK(problem.component_infimum(0) == 0.0);
  CHECK(problem.component_value(0, Vector::Constant(1, 3.0)) == 0.0);
}

TEST_CASE("2x2 identity system has W = I/2") {
  const Matrix a = Matrix::Identity(2, 2);
  const Vector b = Vector::Zero(2);
  const sps::LinearSystemProblem problem(a, b);
  CHECK((problem.w() - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-15);
  CHECK(problem.lambda_min_plus() == doctest::Approx(0.5));

  // Projection step onto the first hyperplane {x_0 = 0}.
  const auto [x_next, gamma] =
      sps::kaczmarz_sps_step(problem, (Vector(2) << 1.0, 1.0).finished(), 0);
  CHECK(gamma == doctest::Approx(1.0));
  CHECK(x_next[0] == doctest::Approx(0.0));
  CHECK(x_next[1] == doctest::Approx(1.0));
}

TEST_CASE("generated systems are consistent and valid") {
  const auto problem = sps::generate_linear_system(20, 10, 3);
  CHECK(problem.consistency_residual() <= 1e-10);
  double psum = 0.0;
  for (double p : problem.row_probabilities()) psum += p;
  CHECK(std::abs(psum - 1.0) < 1e-12);
  CHECK(sps::validate_problem(problem).empty());
}

TEST_CASE("kaczmarz step size is 1 through the generic formula") {
  sps::CounterRng rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = 1 + static_cast<int>(rng.next_below(8));
    const int d = 1 + static_cast<int>(rng.next_below(8));
    const auto problem = sps::generate_linear_system(m, d, rng.next_u64());
    Vector x(d);
    for (int j = 0; j < d; ++j) x[j] = 3.0 * rng.next_gaussian();
    const int i = static_cast<int>(rng.next_below(m));
    if (std::abs(problem.a().row(i).dot(x) - problem.b()[i]) < 1e-6) continue;
    const auto [x_next, gamma] = sps::kaczmarz_sps_step(problem, x, i);
    CHECK(std::abs(gamma - 1.0) <= 1e-12);
    // x_next lies on hyperplane i: the orthogonal projection.
    CHECK(std::abs(problem.a().row(i).dot(x_next) - problem.b()[i]) <
          1e-9 * (1.0 + std::abs(problem.b()[i])));
  }
}

TEST_CASE("kaczmarz skips on the hyperplane and rejects bad rows") {
  Matrix a(2, 2);
  a << 1.0, 0.0, 0.0, 1.0;
  const sps::LinearSystemProblem problem(a, Vector::Zero(2));
  const Vector on_plane = (Vector(2) << 0.0, 5.0).finished();
  const auto [x_next, gamma] = sps::kaczmarz_sps_step(problem, on_plane, 0);
  CHECK(gamma == 0.0);
  CHECK((x_next - on_plane).norm() == 0.0);
  CHECK_THROWS_AS(sps::kaczmarz_sps_step(problem, on_plane, 5), std::invalid_argument);

  Matrix with_zero_row(2, 2);
  with_zero_row << 1.0, 0.0, 0.0, 0.0;
  CHECK_THROWS_AS(sps::LinearSystemProblem(with_zero_row, Vector::Zero(2)),
                  std::invalid_argument);
}

TEST_CASE("projection onto the solution set") {
  // Underdetermined 1x2 system x0 + x1 = 2.
  Matrix a(1, 2);
  a << 1.0, 1.0;
  Vector b(1);
  b << 2.0;
  const sps::LinearSystemProblem problem(a, b);
  const Vector p = problem.project_onto_solutions(Vector::Zero(2));
  CHECK(p[0] == doctest::Approx(1.0));
  CHECK(p[1] == doctest::Approx(1.0));
  // Idempotent on solutions.
  CHECK((problem.project_onto_solutions(p) - p).norm() < 1e-12);
}

TEST_CASE("synthetic classification generator") {
  const auto problem = sps::generate_synthetic_classification(60, 8, 0.4, 0.05, 5);
  CHECK(problem.num_components() == 60);
  CHECK(problem.dim() == 8);
  CHECK(problem.convexity().kind == sps::Convexity::StronglyConvex);
  CHECK(sps::validate_problem(problem).empty());

  // Regularized infima are strictly positive (Lambert path) and respect
  // probed values.
  for (int i = 0; i < problem.num_components(); ++i) {
    CHECK(problem.component_infimum(i) > 0.0);
    CHECK(problem.component_infimum(i) < std::log(2.0));
  }

  const auto unreg = sps::generate_synthetic_classification(60, 8, 0.4, 0.0, 5);
  for (int i = 0; i < unreg.num_components(); ++i) {
    CHECK(unreg.component_infimum(i) == 0.0);
  }

  CHECK_THROWS_AS(sps::generate_synthetic_classification(10, 5, 0.0, 0.1, 1),
                  std::invalid_argument);
}

TEST_CASE("single-component regularized logistic matches the grid oracle") {
  const auto problem = sps::generate_synthetic_classification(1, 1, 1.0, 1.0, 11);
  const double c = std::abs(problem.features()(0, 0));
  const double grid = oracles::grid_min(
      [&](double alpha) { return oracles::g_logistic(alpha, c, 1.0); }, 10.0, 1e-4);
  CHECK(std::abs(problem.component_infimum(0) - grid) < 1e-8);

  // A single regularized component attains its infimum at x*.
  const auto constants = sps::solve_exact(problem);
  CHECK(constants.sigma_sq == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("solve_exact on realizable least squares") {
  const auto problem = sps::generate_least_squares(50, 20, 0.0, 0.0, 21);
  const auto constants = sps::solve_exact(problem);
  CHECK(constants.sigma_sq == doctest::Approx(0.0));
  CHECK(problem.full_gradient(constants.x_star).norm() < 1e-8);
  CHECK(constants.mu > 0.0);
  CHECK(constants.l_max >= constants.l);
  CHECK(constants.mu <= constants.l + 1e-12);
  // Realizable: gradients vanish at x*, so the optimum variance is 0.
  CHECK(constants.z_sq < 1e-20);
  CHECK(sps::validate_problem(problem).empty());
}

TEST_CASE("solve_exact on noisy ridge least squares") {
  const auto problem = sps::generate_least_squares(50, 20, 0.1, 0.5, 22);
  const auto constants = sps::solve_exact(problem);
  CHECK(constants.sigma_sq > 0.0);
  CHECK(constants.z_sq > 0.0);
  CHECK(constants.mu_min == doctest::Approx(0.1));
  CHECK(problem.full_gradient(constants.x_star).norm() < 1e-10);

  // sigma^2 must equal f(x*) - mean f_i* by definition.
  const double direct = problem.full_value(constants.x_star) - problem.mean_infimum();
  CHECK(constants.sigma_sq == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("solve_exact on the regularized synthetic problem") {
  const auto problem = sps::generate_synthetic_classification(200, 20, 0.2, 0.01, 31);
  const auto constants = sps::solve_exact(problem);
  CHECK(problem.full_gradient(constants.x_star).norm() <= 1e-10);
  CHECK(constants.sigma_sq > 0.0);
  CHECK(constants.mu == doctest::Approx(0.01));
  CHECK(constants.l_max > constants.mu);
}

TEST_CASE("separable hinge instance interpolates") {
  const auto instance = sps::generate_separable_hinge(40, 10, 0.5, 7);
  const auto& problem = *instance.problem;
  CHECK_FALSE(problem.is_smooth());
  CHECK(problem.full_value(instance.x_star) == 0.0);
  for (int i = 0; i < problem.num_components(); ++i) {
    CHECK(problem.component_value(i, instance.x_star) == 0.0);
    CHECK(problem.component_gradient(i, instance.x_star).norm() <= instance.g_bound);
  }
  // Validation skips gradient checks for non-smooth problems.
  CHECK(sps::validate_problem(problem).empty());
}

TEST_CASE("conditioned matrix hits the requested condition number") {
  const Matrix a = sps::make_conditioned_matrix(10, 6, 1e10, 1e7, 3);
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& s = svd.singularValues();
  const double kappa = s(0) / s(s.size() - 1);
  CHECK(std::abs(kappa - 1e10) / 1e10 < 0.01);
  CHECK(s(0) == doctest::Approx(1e7).epsilon(1e-6));
}

TEST_CASE("matrix factorization loss and gradients") {
  const auto big = sps::generate_matrix_factorization(6, 30, 1e4, 9);
  CHECK(big.dim() == 6 * (6 + 10));
  CHECK(big.component_infimum(0) == 0.0);

  // Exact factorization witness: W1 = I, W2 = A.
  {
    Matrix w1 = Matrix::Identity(6, 6);
    const Matrix w2 = big.a();
    const Vector theta = big.pack(w1, w2);
    for (int j = 0; j < big.num_components(); ++j) {
      CHECK(big.component_value(j, theta) == doctest::Approx(0.0));
    }
  }

  // Gradients against central differences on a mildly scaled instance
  // (the production scale drowns finite differences in cancellation).
  const Matrix a = sps::make_conditioned_matrix(10, 6, 100.0, 2.0, 13);
  sps::CounterRng rng(4);
  Matrix samples(6, 8);
  for (int j = 0; j < 8; ++j)
    for (int i = 0; i < 6; ++i) samples(i, j) = rng.next_gaussian();
  const sps::MatrixFactorizationProblem problem(a, 5, samples);

  Vector x(problem.dim());
  for (int j = 0; j < problem.dim(); ++j) x[j] = 0.5 * rng.next_gaussian();
  const Vector g = problem.component_gradient(2, x);
  const double h = 1e-6;
  for (int j = 0; j < problem.dim(); j += 7) {
    Vector e = Vector::Zero(problem.dim());
    e[j] = h;
    const double fd =
        (problem.component_value(2, x + e) - problem.component_value(2, x - e)) /
        (2.0 * h);
    CHECK(fd == doctest::Approx(g[j]).epsilon(1e-5));
  }
}

TEST_CASE("rank-deficient factors cannot reach zero loss") {
  const auto problem = sps::generate_matrix_factorization(4, 50, 1e10, 9);
  // Best rank-4 approximation leaves at least the trailing singular mass,
  // scaled by the sample second-moment floor.
  Eigen::JacobiSVD<Matrix> svd(problem.a(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double tail = s(4) * s(4) + s(5) * s(5);
  CHECK(tail > 1e-3);

  // Evaluate the best rank-4 factorization of A itself: the empirical loss
  // stays above zero by a margin tied to the tail.
  Matrix w1 = svd.matrixV().leftCols(4).transpose();
  Matrix w2 = svd.matrixU().leftCols(4) * s.head(4).asDiagonal();
  const Vector theta = problem.pack(w1, w2);
  CHECK(problem.full_value(theta) > 1e-3);
}
