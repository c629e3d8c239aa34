#pragma once

#include "slsopt/core/oracle.hpp"

#include <vector>

namespace slsopt {

/// Stochastic bilinear game min_x max_y (1/n) Σ xᵀA_i y − xᵀb_i − yᵀc_i with
/// coupling matrices [A_i]_{kl} = δ_{kli} (so A_i = e_i·e_iᵀ and n = d).
/// Component operators, stacked as z = (x, y):
///   F_i(z) = (A_i·y − b_i, −(A_iᵀ·x − c_i)).
/// Interpolated instances plant z* and set b_i = A_i·y*, c_i = A_iᵀ·x*, which
/// zeroes every component operator at z*.
class BilinearGameProblem final : public SaddleOracle {
 public:
  /// b and c are d×n; column i holds b_i (resp. c_i).
  BilinearGameProblem(Matrix b, Matrix c, std::optional<Vector> z_star);

  int components() const override { return static_cast<int>(b_.cols()); }
  int dim() const override { return 2 * static_cast<int>(b_.rows()); }
  Vector batch_operator(const Vector& z, const Batch& batch) const override;
  Vector initial_point(std::uint64_t seed) const override;
  std::optional<Vector> solution() const override { return z_star_; }
  std::optional<SigmaBounds> sigma_bounds() const override {
    // A_i·A_iᵀ = e_i·e_iᵀ, so the component bound is 1 and the mean is I/n.
    return SigmaBounds{1.0 / components(), 1.0};
  }

 private:
  Matrix b_, c_;  // d×n
  std::optional<Vector> z_star_;
};

/// Non-interpolated: b_i, c_i entries ~ N(0, 1/d). Interpolated: draw
/// z* ~ N(0, I) and derive b, c from it. Requires n == d.
BilinearGameProblem gen_bilinear_game(std::uint64_t seed, int d, int n, bool interpolated);

/// Strongly-monotone quadratic game: F_i(z) = M_i·z − r_i with
/// M_i = μI + S_i + B_i (S_i ⪰ 0 symmetric, B_i skew-symmetric) and
/// r_i = M_i·z*, so every component vanishes at the planted z*.
class StronglyMonotoneGameProblem final : public SaddleOracle {
 public:
  StronglyMonotoneGameProblem(std::vector<Matrix> M, Vector z_star);

  int components() const override { return static_cast<int>(M_.size()); }
  int dim() const override { return static_cast<int>(z_star_.size()); }
  Vector batch_operator(const Vector& z, const Batch& batch) const override;
  Vector initial_point(std::uint64_t seed) const override;
  std::optional<Vector> solution() const override { return z_star_; }

  /// Monotonicity constant of component i: λ_min of the symmetric part of M_i.
  double component_mu(int i) const { return mu_[static_cast<std::size_t>(i)]; }
  double mu_bar() const;
  double mu_max() const;
  /// max_i σ_max(M_i), the largest component Lipschitz constant.
  double lipschitz_max() const { return L_max_; }

 private:
  std::vector<Matrix> M_;
  std::vector<Vector> r_;
  Vector z_star_;
  std::vector<double> mu_;
  double L_max_ = 0.0;
};

/// M_i = μI + 0.25·G_iG_iᵀ/d + 0.25·(H_i − H_iᵀ)/√d with G_i, H_i Gaussian;
/// the construction keeps σ_max(M_i) ≈ 1.5 so the contraction guarantee has
/// teeth at desk scale. The averaged operator's monotonicity is spot-checked
/// on random pairs at construction.
StronglyMonotoneGameProblem gen_strongly_monotone_game(std::uint64_t seed, int d, int n,
                                                       double mu);

}  // namespace slsopt
