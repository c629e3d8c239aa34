#include "slsopt/problems/least_squares.hpp"

#include <Eigen/Eigenvalues>

#include <stdexcept>

namespace slsopt {

LeastSquaresProblem::LeastSquaresProblem(Matrix X, Vector w_star)
    : X_(std::move(X)), w_star_(std::move(w_star)) {
  if (X_.rows() < 1 || X_.cols() < 1)
    throw std::invalid_argument("LeastSquaresProblem: empty design matrix");
  if (w_star_.size() != X_.cols())
    throw std::invalid_argument("LeastSquaresProblem: w* dimension mismatch");
  y_ = X_ * w_star_;
  L_ = X_.rowwise().squaredNorm();
  Eigen::SelfAdjointEigenSolver<Matrix> es(X_.transpose() * X_ /
                                           static_cast<double>(X_.rows()));
  mu_ = es.eigenvalues().minCoeff();
}

double LeastSquaresProblem::batch_value(const Vector& w, const Batch& batch) const {
  if (batch.empty()) throw std::invalid_argument("LeastSquaresProblem: empty batch");
  double s = 0.0;
  for (int i : batch) {
    const double r = X_.row(i).dot(w) - y_[i];
    s += 0.5 * r * r;
  }
  return s / static_cast<double>(batch.size());
}

double LeastSquaresProblem::batch_value_and_gradient(const Vector& w, const Batch& batch,
                                                     Vector& grad) const {
  if (batch.empty()) throw std::invalid_argument("LeastSquaresProblem: empty batch");
  grad = Vector::Zero(dim());
  double s = 0.0;
  for (int i : batch) {
    const double r = X_.row(i).dot(w) - y_[i];
    s += 0.5 * r * r;
    grad += r * X_.row(i).transpose();
  }
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  grad *= inv_b;
  return s * inv_b;
}

Vector LeastSquaresProblem::initial_point(std::uint64_t seed) const {
  Rng rng(seed);
  return rng.normal_vector(dim());
}

LeastSquaresProblem gen_least_squares_interpolated(std::uint64_t seed, int n, int d) {
  if (n < d) throw std::invalid_argument("gen_least_squares_interpolated: need n >= d");
  Rng rng(derive_stream(seed, "least_squares"));
  for (int attempt = 0; attempt < 16; ++attempt) {
    Matrix X = rng.normal_matrix(n, d);
    Vector w_star = rng.normal_vector(d);
    LeastSquaresProblem p(std::move(X), std::move(w_star));
    if (p.strong_convexity().value() > 1e-12) return p;
  }
  throw std::runtime_error("gen_least_squares_interpolated: rank-deficient design");
}

}  // namespace slsopt
