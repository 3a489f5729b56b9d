#ifndef SPS_PROBLEMS_MATRIX_FACTORIZATION_HPP
#define SPS_PROBLEMS_MATRIX_FACTORIZATION_HPP

#include "sps/problem.hpp"
#include "sps/types.hpp"

namespace sps {

/// Two-layer factorization regression: components are
/// f_j(W1, W2) = ||W2 W1 x_j - A x_j||^2 over a fixed sample set, with the
/// parameter vector the concatenation of vec(W1) and vec(W2). All f_j* are
/// declared 0, attainable iff the factor rank covers rank(A).
class MatrixFactorizationProblem final : public FiniteSumProblem {
 public:
  MatrixFactorizationProblem(Matrix a, int rank, Matrix samples);

  int num_components() const override { return static_cast<int>(samples_.cols()); }
  int dim() const override { return rank_ * (in_dim_ + out_dim_); }
  double component_value(int j, const Vector& theta) const override;
  Vector component_gradient(int j, const Vector& theta) const override;
  double component_infimum(int) const override { return 0.0; }
  ConvexityInfo convexity() const override { return ConvexityInfo::nonconvex(); }

  const Matrix& a() const { return a_; }
  int rank() const { return rank_; }
  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const Matrix& samples() const { return samples_; }

  /// Views into a parameter vector: W1 is rank x in_dim, W2 out_dim x rank.
  Eigen::Map<const Matrix> w1(const Vector& theta) const;
  Eigen::Map<const Matrix> w2(const Vector& theta) const;
  Vector pack(const Matrix& w1, const Matrix& w2) const;

 private:
  Matrix a_;
  int rank_;
  int in_dim_;
  int out_dim_;
  Matrix samples_;  // in_dim x num_samples
};

/// Target matrix of size out_dim x in_dim built from a random SVD with a
/// clustered spectrum: a mildly log-uniform top block and one trailing
/// singular value at s_top / cond_number, so kappa equals cond_number
/// exactly. The largest singular value is s_top.
Matrix make_conditioned_matrix(int out_dim, int in_dim, double cond_number,
                               double s_top, std::uint64_t seed);

/// The 10 x 6 factorization instance: kappa(A) = cond_number within 1%,
/// standard normal samples fixed at generation time.
MatrixFactorizationProblem generate_matrix_factorization(int rank_k,
                                                         int num_samples,
                                                         double cond_number,
                                                         std::uint64_t seed);

}  // namespace sps

#endif  // SPS_PROBLEMS_MATRIX_FACTORIZATION_HPP
