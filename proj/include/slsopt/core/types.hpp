#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace slsopt {

template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vector = VectorX<double>;
using Matrix = MatrixX<double>;

/// Mini-batch of component indices, sampled with replacement.
using Batch = std::vector<int>;

template <class Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& v) {
  return v.allFinite();
}

/// Σ_j (w_j − v_j)², the squared Euclidean distance between iterates.
template <class DerivedA, class DerivedB>
double squared_distance(const Eigen::MatrixBase<DerivedA>& w,
                        const Eigen::MatrixBase<DerivedB>& v) {
  if (w.size() != v.size())
    throw std::invalid_argument("squared_distance: dimension mismatch");
  return (w - v).squaredNorm();
}

/// Epoch index ⌊k·b/n⌋ for iteration k with batch size b over n components.
inline long epoch_of(long iteration, int b, int n) {
  if (b <= 0 || n <= 0) throw std::invalid_argument("epoch_of: b and n must be positive");
  return static_cast<long>((iteration * static_cast<long long>(b)) / n);
}

}  // namespace slsopt
