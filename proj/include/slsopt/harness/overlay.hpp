#pragma once

#include "slsopt/core/oracle.hpp"
#include "slsopt/core/rate_bound.hpp"

#include <string>
#include <vector>

namespace slsopt {

enum class RateKind {
  SgdContraction,       // factor^k · dist0², strongly-convex line-search SGD
  AveragedEnvelope,     // C/k with C = averaged-iterate constant · dist0²
  SegContraction,       // factor^k · dist0², extra-gradient under RSI / strong monotonicity
  BilinearContraction,  // factor^k · dist0² from operator singular-value bounds
};

struct TheoreticalCurve {
  RateKind kind;
  double factor_or_constant = 0.0;     // per-step factor, or the C of C/k
  std::vector<double> values;          // bound at iterations 1..T
  bool hypotheses_ok = true;
  std::string warning;                 // set when a hypothesis is violated
};

/// Bound values for iterations 1..T. dist0_sq is ‖w0 − w*‖². For the
/// bilinear kind, RateBound.mu_bar / L_max are ignored and sigma bounds are
/// taken from `sigma` instead. A violated hypothesis (factor outside (0,1),
/// or c ≤ 1/2 for the envelope) flags the curve but still emits it.
TheoreticalCurve theoretical_overlay(RateKind kind, const RateBound& rate, double dist0_sq,
                                     long iterations,
                                     const SaddleOracle::SigmaBounds* sigma = nullptr);

/// Empirical lower estimate of the strong-growth constant:
/// max over sample points of (mean_i ‖∇f_i(w)‖²) / ‖∇f(w)‖². Points where
/// the full gradient vanishes are skipped; if every point is skipped the
/// ratio is undefined and an exception is raised.
double estimate_sgc_rho(const FiniteSumOracle& oracle, const std::vector<Vector>& points);

}  // namespace slsopt
