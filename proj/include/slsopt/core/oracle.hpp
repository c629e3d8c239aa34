#pragma once

#include "slsopt/core/rng.hpp"
#include "slsopt/core/types.hpp"

#include <optional>

namespace slsopt {

/// Finite-sum problem f(w) = (1/n) Σ f_i(w), exposed through mini-batch
/// value/gradient queries. Implementations are immutable after construction
/// and safe to share read-only across concurrent runs.
class FiniteSumOracle {
 public:
  virtual ~FiniteSumOracle() = default;

  virtual int components() const = 0;
  virtual int dim() const = 0;

  /// Mean of f_i over the batch.
  virtual double batch_value(const Vector& w, const Batch& batch) const = 0;

  /// Mean gradient over the batch; returns the batch value as well since a
  /// backward pass subsumes the forward pass (this is what makes a
  /// line-search check cost one extra forward pass, not two).
  virtual double batch_value_and_gradient(const Vector& w, const Batch& batch,
                                          Vector& grad) const = 0;

  Vector batch_gradient(const Vector& w, const Batch& batch) const {
    Vector g;
    batch_value_and_gradient(w, batch, g);
    return g;
  }

  /// f(w) over all components. Not an optimizer query; used for trace logging.
  virtual double full_value(const Vector& w) const {
    return batch_value(w, full_batch(components()));
  }

  /// Starting iterate for a run with the given (run-derived) seed.
  virtual Vector initial_point(std::uint64_t seed) const {
    (void)seed;
    return Vector::Zero(dim());
  }

  /// Per-component smoothness constants L_i, when known in closed form.
  virtual std::optional<Vector> lipschitz_constants() const { return std::nullopt; }
  /// Strong-convexity constant of the averaged objective, when known.
  virtual std::optional<double> strong_convexity() const { return std::nullopt; }
  /// A known minimizer shared by every component (interpolation), when known.
  virtual std::optional<Vector> solution() const { return std::nullopt; }
};

/// Finite-sum operator F(z) = (1/n) Σ F_i(z) for variational inequalities;
/// z stacks the players' variables for saddle-point games.
class SaddleOracle {
 public:
  virtual ~SaddleOracle() = default;

  virtual int components() const = 0;
  virtual int dim() const = 0;

  virtual Vector batch_operator(const Vector& z, const Batch& batch) const = 0;

  virtual Vector initial_point(std::uint64_t seed) const {
    (void)seed;
    return Vector::Zero(dim());
  }

  virtual std::optional<Vector> solution() const { return std::nullopt; }

  /// (σ_min(E[A_i A_iᵀ]), max_i σ_max(A_i A_iᵀ)) for bilinear instances.
  struct SigmaBounds {
    double sigma_min_mean;
    double sigma_max_component;
  };
  virtual std::optional<SigmaBounds> sigma_bounds() const { return std::nullopt; }
};

/// Cumulative oracle-call counters for one run. Every batch_value costs one
/// function evaluation; every batch_value_and_gradient / batch_operator costs
/// one gradient (resp. operator) evaluation. full_value is trace-only and
/// never counted.
struct EvalCounts {
  long long fn = 0;
  long long grad = 0;
};

/// Pass-through oracle that charges calls to an EvalCounts owned by the run.
class CountingOracle final : public FiniteSumOracle {
 public:
  CountingOracle(const FiniteSumOracle& inner, EvalCounts& counts)
      : inner_(inner), counts_(counts) {}

  int components() const override { return inner_.components(); }
  int dim() const override { return inner_.dim(); }

  double batch_value(const Vector& w, const Batch& batch) const override {
    ++counts_.fn;
    return inner_.batch_value(w, batch);
  }
  double batch_value_and_gradient(const Vector& w, const Batch& batch,
                                  Vector& grad) const override {
    ++counts_.grad;
    return inner_.batch_value_and_gradient(w, batch, grad);
  }
  double full_value(const Vector& w) const override { return inner_.full_value(w); }
  Vector initial_point(std::uint64_t seed) const override { return inner_.initial_point(seed); }
  std::optional<Vector> lipschitz_constants() const override {
    return inner_.lipschitz_constants();
  }
  std::optional<double> strong_convexity() const override { return inner_.strong_convexity(); }
  std::optional<Vector> solution() const override { return inner_.solution(); }

 private:
  const FiniteSumOracle& inner_;
  EvalCounts& counts_;
};

class CountingSaddle final : public SaddleOracle {
 public:
  CountingSaddle(const SaddleOracle& inner, EvalCounts& counts)
      : inner_(inner), counts_(counts) {}

  int components() const override { return inner_.components(); }
  int dim() const override { return inner_.dim(); }
  Vector batch_operator(const Vector& z, const Batch& batch) const override {
    ++counts_.grad;
    return inner_.batch_operator(z, batch);
  }
  Vector initial_point(std::uint64_t seed) const override { return inner_.initial_point(seed); }
  std::optional<Vector> solution() const override { return inner_.solution(); }
  std::optional<SigmaBounds> sigma_bounds() const override { return inner_.sigma_bounds(); }

 private:
  const SaddleOracle& inner_;
  EvalCounts& counts_;
};

}  // namespace slsopt
