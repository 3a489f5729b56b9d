#include "sps/problems/matrix_factorization.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "sps/sampler.hpp"

namespace sps {

MatrixFactorizationProblem::MatrixFactorizationProblem(Matrix a, int rank, Matrix samples)
    : a_(std::move(a)),
      rank_(rank),
      in_dim_(static_cast<int>(a_.cols())),
      out_dim_(static_cast<int>(a_.rows())),
      samples_(std::move(samples)) {
  if (rank_ < 1) throw std::invalid_argument("matrix factorization: rank >= 1");
  if (samples_.rows() != in_dim_ || samples_.cols() < 1) {
    throw std::invalid_argument("matrix factorization: sample matrix must be in_dim x m");
  }
}

Eigen::Map<const Matrix> MatrixFactorizationProblem::w1(const Vector& theta) const {
  return Eigen::Map<const Matrix>(theta.data(), rank_, in_dim_);
}

Eigen::Map<const Matrix> MatrixFactorizationProblem::w2(const Vector& theta) const {
  return Eigen::Map<const Matrix>(theta.data() + rank_ * in_dim_, out_dim_, rank_);
}

Vector MatrixFactorizationProblem::pack(const Matrix& w1_mat, const Matrix& w2_mat) const {
  if (w1_mat.rows() != rank_ || w1_mat.cols() != in_dim_ ||
      w2_mat.rows() != out_dim_ || w2_mat.cols() != rank_) {
    throw std::invalid_argument("matrix factorization: factor shape mismatch");
  }
  Vector theta(dim());
  Eigen::Map<Matrix>(theta.data(), rank_, in_dim_) = w1_mat;
  Eigen::Map<Matrix>(theta.data() + rank_ * in_dim_, out_dim_, rank_) = w2_mat;
  return theta;
}

double MatrixFactorizationProblem::component_value(int j, const Vector& theta) const {
  if (theta.size() != dim()) throw std::invalid_argument("matrix factorization: bad theta");
  const Vector x = samples_.col(j);
  const Vector residual = w2(theta) * (w1(theta) * x) - a_ * x;
  return residual.squaredNorm();
}

Vector MatrixFactorizationProblem::component_gradient(int j, const Vector& theta) const {
  if (theta.size() != dim()) throw std::invalid_argument("matrix factorization: bad theta");
  const Vector x = samples_.col(j);
  const auto w1_mat = w1(theta);
  const auto w2_mat = w2(theta);
  const Vector hidden = w1_mat * x;
  const Vector residual = w2_mat * hidden - a_ * x;

  Vector grad(dim());
  // d/dW1 ||W2 W1 x - A x||^2 = 2 W2^T r x^T,  d/dW2 = 2 r (W1 x)^T.
  Eigen::Map<Matrix>(grad.data(), rank_, in_dim_) =
      2.0 * (w2_mat.transpose() * residual) * x.transpose();
  Eigen::Map<Matrix>(grad.data() + rank_ * in_dim_, out_dim_, rank_) =
      2.0 * residual * hidden.transpose();
  return grad;
}

Matrix make_conditioned_matrix(int out_dim, int in_dim, double cond_number,
                               double s_top, std::uint64_t seed) {
  if (out_dim < 1 || in_dim < 1) throw std::invalid_argument("conditioned matrix: dims >= 1");
  if (!(cond_number >= 1.0)) throw std::invalid_argument("conditioned matrix: cond >= 1");
  if (!(s_top > 0.0)) throw std::invalid_argument("conditioned matrix: s_top > 0");
  const int r = std::min(out_dim, in_dim);

  CounterRng rng(seed, /*stream=*/19);
  Matrix gauss_u(out_dim, out_dim);
  for (int i = 0; i < out_dim; ++i)
    for (int j = 0; j < out_dim; ++j) gauss_u(i, j) = rng.next_gaussian();
  Matrix gauss_v(in_dim, in_dim);
  for (int i = 0; i < in_dim; ++i)
    for (int j = 0; j < in_dim; ++j) gauss_v(i, j) = rng.next_gaussian();

  const Matrix u = Eigen::HouseholderQR<Matrix>(gauss_u).householderQ();
  const Matrix v = Eigen::HouseholderQR<Matrix>(gauss_v).householderQ();

  // Clustered spectrum: a mildly log-uniform top block plus one trailing
  // singular value carrying the full condition number (one near-null
  // direction). A fully log-uniform ladder spanning a large cond_number
  // would bury the intermediate directions many orders of magnitude below
  // the leading one, which makes the rank-deficient residual invisible and
  // the interpolating fit unreachable for any first-order method.
  Vector sigma(r);
  const double log_top = std::log10(s_top);
  const double top_span = std::log10(std::min(cond_number, 10.0));
  for (int i = 0; i + 1 < r; ++i) {
    const double t = r > 2 ? static_cast<double>(i) / (r - 2) : 0.0;
    sigma[i] = std::pow(10.0, log_top - top_span * t);
  }
  sigma[r - 1] = s_top / cond_number;
  return u.leftCols(r) * sigma.asDiagonal() * v.leftCols(r).transpose();
}

MatrixFactorizationProblem generate_matrix_factorization(int rank_k, int num_samples,
                                                         double cond_number,
                                                         std::uint64_t seed) {
  if (num_samples < 1) throw std::invalid_argument("matrix factorization: samples >= 1");
  constexpr int kOutDim = 10;
  constexpr int kInDim = 6;
  // Unit top scale: the rank-deficient residual sits at the square of the
  // smallest top-block singular value, well separated from both the
  // training-loss thresholds and the floating-point floor.
  const double s_top = 1.0;
  Matrix a = make_conditioned_matrix(kOutDim, kInDim, cond_number, s_top, seed);

  CounterRng rng(seed, /*stream=*/23);
  Matrix samples(kInDim, num_samples);
  for (int j = 0; j < num_samples; ++j)
    for (int i = 0; i < kInDim; ++i) samples(i, j) = rng.next_gaussian();

  return MatrixFactorizationProblem(std::move(a), rank_k, std::move(samples));
}

}  // namespace sps
