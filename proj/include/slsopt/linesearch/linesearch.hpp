#pragma once

#include "slsopt/core/oracle.hpp"
#include "slsopt/core/types.hpp"

#include <cmath>
#include <stdexcept>

namespace slsopt {

/// Parameters shared by the Armijo, Goldstein and Lipschitz searches.
///   c          sufficient-decrease constant in (0,1); Goldstein needs c <= 1/2
///   beta       backtracking shrink factor in (0,1)
///   gamma      growth factor (> 1) for reset option 2 and Goldstein's forward search
///   eta_max    largest step-size ever tried or accepted
///   reset_option  0 keep previous step, 1 restart from eta_max, 2 grow by gamma^(b/n)
///   max_backtracks fail-safe cap on condition checks per search
struct LineSearchConfig {
  double c = 0.1;
  double beta = 0.9;
  double gamma = 1.5;
  double eta_max = 1.0;
  int reset_option = 2;
  int max_backtracks = 100;

  void validate(bool goldstein = false) const {
    if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("LineSearchConfig: c must be in (0,1)");
    if (goldstein && c > 0.5)
      throw std::invalid_argument("LineSearchConfig: Goldstein needs c <= 0.5");
    if (!(beta > 0.0 && beta < 1.0))
      throw std::invalid_argument("LineSearchConfig: beta must be in (0,1)");
    if (!(gamma > 1.0)) throw std::invalid_argument("LineSearchConfig: gamma must be > 1");
    if (!(eta_max > 0.0)) throw std::invalid_argument("LineSearchConfig: eta_max must be > 0");
    if (reset_option < 0 || reset_option > 2)
      throw std::invalid_argument("LineSearchConfig: reset_option must be 0, 1 or 2");
    if (max_backtracks < 1)
      throw std::invalid_argument("LineSearchConfig: max_backtracks must be >= 1");
  }
};

struct LineSearchOutcome {
  double eta = 0.0;
  int condition_evals = 0;
  bool hit_floor = false;  // max_backtracks exhausted without acceptance
};

/// Sufficient-decrease check at trial step eta:
///   f_B(w − eta·g) ≤ f_w − c·eta·‖g‖²
/// (equality accepted). Requires g = batch gradient and f_w = batch value at
/// w; costs exactly one batch_value evaluation. A non-finite candidate value
/// is treated as failure, i.e. as "too large a step".
bool armijo_holds(const FiniteSumOracle& oracle, const Batch& batch, const Vector& w,
                  const Vector& g, double f_w, double eta, double c);

/// Backtracks over start_eta, beta·start_eta, beta²·start_eta, ... until
/// armijo_holds; g is fixed and never recomputed. On exhaustion returns the
/// last tested candidate with hit_floor set.
LineSearchOutcome backtrack_armijo(const FiniteSumOracle& oracle, const Batch& batch,
                                   const Vector& w, const Vector& g, double f_w,
                                   double start_eta, const LineSearchConfig& config);

/// Starting step-size for iteration k (1-based): eta_max at k = 1, then per
/// reset_option; the result is clamped to (0, eta_max].
double reset_step(double eta_prev, const LineSearchConfig& config, int b, int n, long k);

/// Two-sided search: shrink by beta while sufficient decrease fails, grow by
/// gamma (capped at eta_max) while the curvature side
///   f_B(w − eta·g) ≥ f_w − (1−c)·eta·‖g‖²
/// fails. Each loop pass costs one batch_value evaluation and checks both
/// inequalities on it. The step carries across iterations; there is no reset.
LineSearchOutcome goldstein_search(const FiniteSumOracle& oracle, const Batch& batch,
                                   const Vector& w, const Vector& g, double f_w,
                                   double eta_in, const LineSearchConfig& config);

/// Relative-change check on the gradient/operator over the trial step:
///   ‖F_B(z − eta·Fz) − Fz‖ ≤ c·‖Fz‖.
/// Op is any callable (z, batch) -> Vector; one evaluation per check.
template <class Op>
bool lipschitz_holds(Op&& op, const Batch& batch, const Vector& z, const Vector& Fz,
                     double eta, double c) {
  const Vector F_trial = op(Vector(z - eta * Fz), batch);
  if (!all_finite(F_trial)) return false;
  return (F_trial - Fz).norm() <= c * Fz.norm();
}

/// Backtracking analogue of backtrack_armijo under lipschitz_holds; each
/// condition check costs one gradient/operator evaluation.
template <class Op>
LineSearchOutcome backtrack_lipschitz(Op&& op, const Batch& batch, const Vector& z,
                                      const Vector& Fz, double start_eta,
                                      const LineSearchConfig& config) {
  if (!(start_eta > 0.0 && start_eta <= config.eta_max))
    throw std::invalid_argument("backtrack_lipschitz: start_eta must be in (0, eta_max]");
  double eta = start_eta;
  int evals = 0;
  while (evals < config.max_backtracks) {
    ++evals;
    if (lipschitz_holds(op, batch, z, Fz, eta, config.c)) return {eta, evals, false};
    if (evals == config.max_backtracks) break;
    eta *= config.beta;
  }
  return {eta, evals, true};
}

}  // namespace slsopt
