#pragma once

#include "slsopt/core/oracle.hpp"

namespace slsopt {

/// Non-convex regression benchmark: per-sample loss ‖W2·W1·x − A·x‖² over a
/// fixed pool of Gaussian inputs, with A = U·diag(σ)·Vᵀ, σ_i = 10^(−2(i−1)),
/// i = 1..6 (condition number 1e10). Parameters pack W1 (k×6, row-major)
/// followed by W2 (10×k, row-major).
class MatrixFactorizationProblem final : public FiniteSumOracle {
 public:
  static constexpr int kRows = 10;
  static constexpr int kCols = 6;

  MatrixFactorizationProblem(Matrix A, Matrix samples, int rank);

  int components() const override { return static_cast<int>(samples_.rows()); }
  int dim() const override { return rank_ * kCols + kRows * rank_; }
  double batch_value(const Vector& w, const Batch& batch) const override;
  double batch_value_and_gradient(const Vector& w, const Batch& batch,
                                  Vector& grad) const override;

  /// W2 gets orthonormal columns and W1 small Gaussian entries
  /// (0.1·N(0,1)/√6). Balanced Gaussian factors are a bad starting point
  /// here: gradient descent keeps W2ᵀW2 − W1·W1ᵀ nearly conserved, so W2's
  /// spectrum collapses toward the tiny singular values of A and the flat
  /// directions freeze several orders of magnitude above interpolation.
  Vector initial_point(std::uint64_t seed) const override;

  int rank() const { return rank_; }
  const Matrix& target() const { return A_; }         // the 10×6 matrix A
  const Matrix& samples() const { return samples_; }  // m×6 input pool

  Matrix unpack_w1(const Vector& w) const;
  Matrix unpack_w2(const Vector& w) const;
  Vector pack(const Matrix& W1, const Matrix& W2) const;

 private:
  Matrix A_;        // 10×6
  Matrix samples_;  // m×6
  int rank_;
};

/// A = U·diag(σ)·Vᵀ with U, V drawn orthogonal (QR of Gaussians) and the
/// log-spaced σ above; samples are m i.i.d. N(0, I₆) inputs.
MatrixFactorizationProblem gen_matrix_factorization(std::uint64_t seed, int m, int rank);

}  // namespace slsopt
