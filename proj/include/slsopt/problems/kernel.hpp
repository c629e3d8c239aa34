#pragma once

#include "slsopt/core/oracle.hpp"
#include "slsopt/problems/libsvm.hpp"

namespace slsopt {

/// Binary classification with a radial-basis kernel and no regularization,
/// parameterized directly by the dual vector w ∈ Rⁿ over the training set:
///   f_i(w) = log(1 + exp(−y_i·(K_i·w))),   K_ij = exp(−‖x_i−x_j‖²/(2σ²)).
/// Convex and, on separable data, interpolated in the limit (the loss has no
/// finite minimizer there). Labels must be ±1.
class KernelClassificationProblem final : public FiniteSumOracle {
 public:
  KernelClassificationProblem(std::vector<SparseRow> inputs, std::vector<double> labels,
                              double bandwidth);

  int components() const override { return static_cast<int>(labels_.size()); }
  int dim() const override { return static_cast<int>(labels_.size()); }
  double batch_value(const Vector& w, const Batch& batch) const override;
  double batch_value_and_gradient(const Vector& w, const Batch& batch,
                                  Vector& grad) const override;
  Vector initial_point(std::uint64_t /*seed*/) const override {
    return Vector::Zero(dim());  // symmetric start: every f_i = log 2
  }

  /// L_i = ‖K_i‖²/4 (the logistic loss has curvature at most 1/4).
  std::optional<Vector> lipschitz_constants() const override;

  const Matrix& gram() const { return K_; }
  double bandwidth() const { return sigma_; }

  /// Fraction of held-out examples whose predicted sign matches the label;
  /// predictions use kernel evaluations against the training inputs.
  double test_accuracy(const Vector& w, const std::vector<SparseRow>& test_inputs,
                       const std::vector<double>& test_labels) const;

 private:
  std::vector<SparseRow> inputs_;
  std::vector<double> labels_;
  double sigma_;
  Matrix K_;
};

/// Seeded shuffle followed by a train_fraction : rest split, Gram matrix
/// construction on the training part. Requires both labels in the training
/// split.
struct KernelSplit {
  KernelClassificationProblem problem;
  std::vector<SparseRow> test_inputs;
  std::vector<double> test_labels;
};

KernelSplit rbf_kernel_problem(const Dataset& data, double bandwidth, double train_fraction,
                               std::uint64_t split_seed);

/// Synthetic linearly separable 2-D set: points uniform in [−1,1]², labelled
/// by the sign of the second coordinate, with the band |x₂| < margin/2
/// excluded so opposite classes stay at least `margin` apart.
Dataset gen_margin_dataset_2d(std::uint64_t seed, int count, double margin);

/// ‖a − b‖² for sparse rows (merge on indices).
double sparse_squared_distance(const SparseRow& a, const SparseRow& b);

}  // namespace slsopt
