#include "slsopt/problems/games.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace slsopt {

BilinearGameProblem::BilinearGameProblem(Matrix b, Matrix c, std::optional<Vector> z_star)
    : b_(std::move(b)), c_(std::move(c)), z_star_(std::move(z_star)) {
  if (b_.rows() != c_.rows() || b_.cols() != c_.cols())
    throw std::invalid_argument("BilinearGameProblem: b and c shapes differ");
  if (b_.rows() != b_.cols())
    throw std::invalid_argument("BilinearGameProblem: the delta construction needs n == d");
  if (z_star_ && z_star_->size() != 2 * b_.rows())
    throw std::invalid_argument("BilinearGameProblem: z* dimension mismatch");
}

Vector BilinearGameProblem::batch_operator(const Vector& z, const Batch& batch) const {
  if (batch.empty()) throw std::invalid_argument("BilinearGameProblem: empty batch");
  const auto d = b_.rows();
  if (z.size() != 2 * d) throw std::invalid_argument("BilinearGameProblem: z dimension mismatch");
  const auto x = z.head(d);
  const auto y = z.tail(d);
  Vector F = Vector::Zero(2 * d);
  for (int i : batch) {
    // A_i·y = y_i·e_i and A_iᵀ·x = x_i·e_i
    F[i] += y[i];
    F.head(d) -= b_.col(i);
    F[d + i] -= x[i];
    F.tail(d) += c_.col(i);
  }
  return F / static_cast<double>(batch.size());
}

Vector BilinearGameProblem::initial_point(std::uint64_t seed) const {
  // start at unit distance from the reference point; the per-iteration
  // contraction on this game is only 1 − O(1/n), so desk-scale budgets need
  // a start that is close in absolute terms
  Rng rng(seed);
  Vector u = rng.normal_vector(dim());
  u /= u.norm();
  if (z_star_) return *z_star_ + u;
  return u;
}

BilinearGameProblem gen_bilinear_game(std::uint64_t seed, int d, int n, bool interpolated) {
  if (n != d) throw std::invalid_argument("gen_bilinear_game: the delta construction needs n == d");
  if (d < 1) throw std::invalid_argument("gen_bilinear_game: d must be >= 1");
  Rng rng(derive_stream(seed, "bilinear_game"));
  if (interpolated) {
    const Vector x_star = rng.normal_vector(d);
    const Vector y_star = rng.normal_vector(d);
    // b_i = A_i·y* = y*_i·e_i, c_i = A_iᵀ·x* = x*_i·e_i
    Matrix b = Matrix::Zero(d, n);
    Matrix c = Matrix::Zero(d, n);
    for (int i = 0; i < n; ++i) {
      b(i, i) = y_star[i];
      c(i, i) = x_star[i];
    }
    Vector z_star(2 * d);
    z_star << x_star, y_star;
    return BilinearGameProblem(std::move(b), std::move(c), std::move(z_star));
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  const Matrix b = scale * rng.normal_matrix(d, n);
  const Matrix c = scale * rng.normal_matrix(d, n);
  return BilinearGameProblem(b, c, std::nullopt);
}

StronglyMonotoneGameProblem::StronglyMonotoneGameProblem(std::vector<Matrix> M, Vector z_star)
    : M_(std::move(M)), z_star_(std::move(z_star)) {
  if (M_.empty()) throw std::invalid_argument("StronglyMonotoneGameProblem: no components");
  const auto d = z_star_.size();
  r_.reserve(M_.size());
  mu_.reserve(M_.size());
  for (const auto& Mi : M_) {
    if (Mi.rows() != d || Mi.cols() != d)
      throw std::invalid_argument("StronglyMonotoneGameProblem: component shape mismatch");
    r_.push_back(Mi * z_star_);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (Mi + Mi.transpose()));
    mu_.push_back(es.eigenvalues().minCoeff());
    L_max_ = std::max(L_max_, Eigen::JacobiSVD<Matrix>(Mi).singularValues().maxCoeff());
  }
}

Vector StronglyMonotoneGameProblem::batch_operator(const Vector& z, const Batch& batch) const {
  if (batch.empty()) throw std::invalid_argument("StronglyMonotoneGameProblem: empty batch");
  Vector F = Vector::Zero(dim());
  for (int i : batch) F += M_[static_cast<std::size_t>(i)] * z - r_[static_cast<std::size_t>(i)];
  return F / static_cast<double>(batch.size());
}

Vector StronglyMonotoneGameProblem::initial_point(std::uint64_t seed) const {
  Rng rng(seed);
  Vector u = rng.normal_vector(dim());
  u /= u.norm();
  return z_star_ + u;
}

double StronglyMonotoneGameProblem::mu_bar() const {
  return std::accumulate(mu_.begin(), mu_.end(), 0.0) / static_cast<double>(mu_.size());
}

double StronglyMonotoneGameProblem::mu_max() const {
  return *std::max_element(mu_.begin(), mu_.end());
}

StronglyMonotoneGameProblem gen_strongly_monotone_game(std::uint64_t seed, int d, int n,
                                                       double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("gen_strongly_monotone_game: mu must be > 0");
  if (d < 1 || n < 1)
    throw std::invalid_argument("gen_strongly_monotone_game: d and n must be >= 1");
  Rng rng(derive_stream(seed, "monotone_game"));
  std::vector<Matrix> M;
  M.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Matrix G = rng.normal_matrix(d, d);
    const Matrix H = rng.normal_matrix(d, d);
    const Matrix S = 0.25 / d * (G * G.transpose());
    const Matrix B = 0.25 / std::sqrt(static_cast<double>(d)) * (H - H.transpose());
    M.push_back(mu * Matrix::Identity(d, d) + S + B);
  }
  const Vector z_star = rng.normal_vector(d);
  StronglyMonotoneGameProblem game(std::move(M), z_star);

  // spot-check monotonicity of the averaged operator on random pairs
  const Batch all = full_batch(n);
  for (int t = 0; t < 10; ++t) {
    const Vector u = rng.normal_vector(d);
    const Vector v = rng.normal_vector(d);
    const Vector diff = game.batch_operator(u, all) - game.batch_operator(v, all);
    const double lhs = diff.dot(u - v);
    const double rhs = mu * (u - v).squaredNorm();
    if (lhs < rhs - 1e-9 * std::max(1.0, std::abs(rhs)))
      throw std::runtime_error("gen_strongly_monotone_game: monotonicity check failed");
  }
  return game;
}

}  // namespace slsopt
