#pragma once

#include "slsopt/core/oracle.hpp"

namespace slsopt {

/// Interpolated least squares: f_i(w) = 0.5·(x_iᵀw − y_i)² with consistent
/// labels y = X·w*, so every component vanishes at w*. Exposes
/// L_i = ‖x_i‖², μ = λ_min(XᵀX/n) and the planted solution.
class LeastSquaresProblem final : public FiniteSumOracle {
 public:
  /// Direct construction from a design matrix and planted solution.
  LeastSquaresProblem(Matrix X, Vector w_star);

  int components() const override { return static_cast<int>(X_.rows()); }
  int dim() const override { return static_cast<int>(X_.cols()); }
  double batch_value(const Vector& w, const Batch& batch) const override;
  double batch_value_and_gradient(const Vector& w, const Batch& batch,
                                  Vector& grad) const override;
  Vector initial_point(std::uint64_t seed) const override;

  std::optional<Vector> lipschitz_constants() const override { return L_; }
  std::optional<double> strong_convexity() const override { return mu_; }
  std::optional<Vector> solution() const override { return w_star_; }

  const Matrix& design() const { return X_; }
  const Vector& labels() const { return y_; }

 private:
  Matrix X_;
  Vector y_, w_star_, L_;
  double mu_;
};

/// Draws X with N(0,1) rows and w* ~ N(0,I); requires n >= d and redraws on
/// (measure-zero) rank deficiency.
LeastSquaresProblem gen_least_squares_interpolated(std::uint64_t seed, int n, int d);

}  // namespace slsopt
