#pragma once

#include "slsopt/core/oracle.hpp"

#include <vector>

namespace slsopt {

/// f_i(w) = (L_i/2)·‖w‖². Components share the minimizer w* = 0, so the sum
/// interpolates; L_i and μ_i = L_i are exact. Unit-test substrate for the
/// step-size bound checks and the worked line-search cases.
class DiagQuadraticProblem final : public FiniteSumOracle {
 public:
  DiagQuadraticProblem(std::vector<double> L, int dim);

  int components() const override { return static_cast<int>(L_.size()); }
  int dim() const override { return dim_; }
  double batch_value(const Vector& w, const Batch& batch) const override;
  double batch_value_and_gradient(const Vector& w, const Batch& batch,
                                  Vector& grad) const override;
  Vector initial_point(std::uint64_t seed) const override;

  std::optional<Vector> lipschitz_constants() const override;
  std::optional<double> strong_convexity() const override;  // mean L_i
  std::optional<Vector> solution() const override { return Vector::Zero(dim_); }

  double component_L(int i) const { return L_[static_cast<std::size_t>(i)]; }

 private:
  double mean_L(const Batch& batch) const;
  std::vector<double> L_;
  int dim_;
};

}  // namespace slsopt
