#include "slsopt/linesearch/linesearch.hpp"

#include <algorithm>

namespace slsopt {

bool armijo_holds(const FiniteSumOracle& oracle, const Batch& batch, const Vector& w,
                  const Vector& g, double f_w, double eta, double c) {
  const double f_trial = oracle.batch_value(w - eta * g, batch);
  if (!std::isfinite(f_trial)) return false;
  return f_trial <= f_w - c * eta * g.squaredNorm();
}

LineSearchOutcome backtrack_armijo(const FiniteSumOracle& oracle, const Batch& batch,
                                   const Vector& w, const Vector& g, double f_w,
                                   double start_eta, const LineSearchConfig& config) {
  if (!(start_eta > 0.0 && start_eta <= config.eta_max))
    throw std::invalid_argument("backtrack_armijo: start_eta must be in (0, eta_max]");
  double eta = start_eta;
  int evals = 0;
  while (evals < config.max_backtracks) {
    ++evals;
    if (armijo_holds(oracle, batch, w, g, f_w, eta, config.c)) return {eta, evals, false};
    if (evals == config.max_backtracks) break;
    eta *= config.beta;
  }
  return {eta, evals, true};
}

double reset_step(double eta_prev, const LineSearchConfig& config, int b, int n, long k) {
  if (k < 1) throw std::invalid_argument("reset_step: k is 1-based");
  if (k == 1) return config.eta_max;
  double eta = eta_prev;
  switch (config.reset_option) {
    case 0: break;
    case 1: eta = config.eta_max; break;
    case 2: eta = eta_prev * std::pow(config.gamma, static_cast<double>(b) / n); break;
    default: throw std::invalid_argument("reset_step: unknown reset_option");
  }
  return std::min(eta, config.eta_max);
}

LineSearchOutcome goldstein_search(const FiniteSumOracle& oracle, const Batch& batch,
                                   const Vector& w, const Vector& g, double f_w,
                                   double eta_in, const LineSearchConfig& config) {
  if (!(eta_in > 0.0 && eta_in <= config.eta_max))
    throw std::invalid_argument("goldstein_search: eta_in must be in (0, eta_max]");
  const double gg = g.squaredNorm();
  double eta = eta_in;
  int evals = 0;
  while (evals < config.max_backtracks) {
    ++evals;
    const double f_trial = oracle.batch_value(w - eta * g, batch);
    const bool sufficient =
        std::isfinite(f_trial) && f_trial <= f_w - config.c * eta * gg;
    if (!sufficient) {
      if (evals == config.max_backtracks) break;
      eta *= config.beta;
      continue;
    }
    const bool curvature = f_trial >= f_w - (1.0 - config.c) * eta * gg;
    if (!curvature) {
      if (evals == config.max_backtracks) break;
      eta = std::min(config.gamma * eta, config.eta_max);
      continue;
    }
    return {eta, evals, false};
  }
  return {eta, evals, true};
}

}  // namespace slsopt
