#pragma once

#include "slsopt/core/oracle.hpp"
#include "slsopt/core/trace.hpp"
#include "slsopt/linesearch/linesearch.hpp"

#include <functional>
#include <optional>
#include <string>

namespace slsopt {

enum class Algorithm {
  SgdArmijo,
  SgdGoldstein,
  PolyakArmijo,
  NesterovArmijo,
  SegLipschitz,
  ConstantSgd,
  Adam,
};

std::string algorithm_name(Algorithm alg);
Algorithm algorithm_from_name(const std::string& name);

struct OptimizerOptions {
  double alpha = 0.0;                 // Polyak momentum factor in [0,1)
  std::optional<double> step_cap;     // hard bound on accepted eta (non-convex runs)
  bool independent_batch = false;     // Armijo condition on a batch independent of the step
  double baseline_eta = 0.0;          // constant-step SGD
  double adam_lr = 1e-3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;

  void validate(Algorithm alg) const;
};

/// Mutable per-run state shared by the SGD-family steppers. w_prev backs the
/// Polyak momentum term (equal to w at k = 1, so the first term vanishes);
/// lambda/lambda_prev/tau are the Nesterov bookkeeping scalars, updated after
/// each accelerated step in the order: temp = λ; λ = (1+√(1+4λ_prev²))/2;
/// λ_prev = temp; τ = (1−λ_prev)/λ.
struct SgdState {
  Vector w;
  Vector w_prev;
  double eta_prev = 1.0;
  long k = 1;  // 1-based iteration counter
  double lambda = 1.0;
  double lambda_prev = 0.0;
  double tau = 1.0;
  LineSearchOutcome last_search;

  static SgdState init(Vector w0, const LineSearchConfig& ls);
};

struct SegState {
  Vector z;
  double eta_prev = 1.0;
  long k = 1;
  LineSearchOutcome last_search;

  static SegState init(Vector z0, const LineSearchConfig& ls);
};

struct AdamState {
  Vector w, m, v;
  long t = 0;

  static AdamState init(Vector w0);
};

SgdState sgd_armijo_step(SgdState state, const FiniteSumOracle& oracle,
                         MiniBatchSampler& sampler, const LineSearchConfig& ls,
                         const OptimizerOptions& opts,
                         MiniBatchSampler* ls_sampler = nullptr);

SgdState sgd_goldstein_step(SgdState state, const FiniteSumOracle& oracle,
                            MiniBatchSampler& sampler, const LineSearchConfig& ls,
                            const OptimizerOptions& opts);

SgdState polyak_armijo_step(SgdState state, const FiniteSumOracle& oracle,
                            MiniBatchSampler& sampler, const LineSearchConfig& ls,
                            const OptimizerOptions& opts);

SgdState nesterov_armijo_step(SgdState state, const FiniteSumOracle& oracle,
                              MiniBatchSampler& sampler, const LineSearchConfig& ls,
                              const OptimizerOptions& opts);

/// One extra-gradient update: with the accepted eta and the same batch,
/// z' = z − eta·F_B(z), then z⁺ = z − eta·F_B(z'). Two operator evaluations
/// beyond the line-search checks.
template <class Op>
SegState seg_lipschitz_step(SegState state, Op&& op, MiniBatchSampler& sampler,
                            const LineSearchConfig& ls, const OptimizerOptions& opts);

SgdState constant_sgd_step(SgdState state, const FiniteSumOracle& oracle,
                           MiniBatchSampler& sampler, const OptimizerOptions& opts);

AdamState adam_step(AdamState state, const FiniteSumOracle& oracle, MiniBatchSampler& sampler,
                    const OptimizerOptions& opts);

/// Aborted run (non-finite iterate or similar); carries the iteration index.
class RunAbort : public std::runtime_error {
 public:
  RunAbort(long iteration, const std::string& what)
      : std::runtime_error("iteration " + std::to_string(iteration) + ": " + what),
        iteration_(iteration) {}
  long iteration() const { return iteration_; }

 private:
  long iteration_;
};

struct RunConfig {
  LineSearchConfig ls;
  OptimizerOptions opts;
  Vector w0;
  int batch_size = 1;
  long iterations = 0;
  std::uint64_t seed = 0;
  /// Optional held-out metric, evaluated at epoch boundaries (not counted).
  std::function<double(const Vector&)> test_metric;
};

/// Drives a stepper for the full budget, recording one TraceRow per
/// iteration. Evaluation counters charge every batch_value /
/// batch_value_and_gradient / batch_operator call, line-search checks
/// included; the full training loss is evaluated only at epoch boundaries.
RunTrace run(Algorithm alg, const FiniteSumOracle& oracle, const RunConfig& config);

/// Saddle-point runs drive the extra-gradient stepper on batch_operator.
RunTrace run(const SaddleOracle& saddle, const RunConfig& config);

// --- template implementation ---

template <class Op>
SegState seg_lipschitz_step(SegState state, Op&& op, MiniBatchSampler& sampler,
                            const LineSearchConfig& ls, const OptimizerOptions& opts) {
  const Batch batch = sampler.sample();
  const Vector Fz = op(state.z, batch);

  const double start = reset_step(state.eta_prev, ls, sampler.batch_size(),
                                  sampler.population(), state.k);
  LineSearchOutcome out = backtrack_lipschitz(op, batch, state.z, Fz, start, ls);
  double eta = out.eta;
  if (opts.step_cap) eta = std::min(eta, *opts.step_cap);

  const Vector z_half = state.z - eta * Fz;
  const Vector F_half = op(z_half, batch);
  Vector z_next = state.z - eta * F_half;
  if (!all_finite(z_next)) throw RunAbort(state.k, "non-finite extra-gradient iterate");

  state.z = std::move(z_next);
  state.eta_prev = eta;
  out.eta = eta;
  state.last_search = out;
  ++state.k;
  return state;
}

}  // namespace slsopt
