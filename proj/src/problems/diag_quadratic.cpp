#include "slsopt/problems/diag_quadratic.hpp"

#include <numeric>
#include <stdexcept>

namespace slsopt {

DiagQuadraticProblem::DiagQuadraticProblem(std::vector<double> L, int dim)
    : L_(std::move(L)), dim_(dim) {
  if (L_.empty()) throw std::invalid_argument("DiagQuadraticProblem: empty L list");
  for (double l : L_)
    if (!(l > 0.0)) throw std::invalid_argument("DiagQuadraticProblem: all L_i must be > 0");
  if (dim_ < 1) throw std::invalid_argument("DiagQuadraticProblem: dim must be >= 1");
}

double DiagQuadraticProblem::mean_L(const Batch& batch) const {
  if (batch.empty()) throw std::invalid_argument("DiagQuadraticProblem: empty batch");
  double s = 0.0;
  for (int i : batch) s += L_.at(static_cast<std::size_t>(i));
  return s / static_cast<double>(batch.size());
}

double DiagQuadraticProblem::batch_value(const Vector& w, const Batch& batch) const {
  return 0.5 * mean_L(batch) * w.squaredNorm();
}

double DiagQuadraticProblem::batch_value_and_gradient(const Vector& w, const Batch& batch,
                                                      Vector& grad) const {
  const double L = mean_L(batch);
  grad = L * w;
  return 0.5 * L * w.squaredNorm();
}

Vector DiagQuadraticProblem::initial_point(std::uint64_t seed) const {
  Rng rng(seed);
  return rng.normal_vector(dim_);
}

std::optional<Vector> DiagQuadraticProblem::lipschitz_constants() const {
  Vector L(static_cast<Eigen::Index>(L_.size()));
  for (Eigen::Index i = 0; i < L.size(); ++i) L[i] = L_[static_cast<std::size_t>(i)];
  return L;
}

std::optional<double> DiagQuadraticProblem::strong_convexity() const {
  const double s = std::accumulate(L_.begin(), L_.end(), 0.0);
  return s / static_cast<double>(L_.size());
}

}  // namespace slsopt
