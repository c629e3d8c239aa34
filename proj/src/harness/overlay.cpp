#include "slsopt/harness/overlay.hpp"

#include <cmath>
#include <stdexcept>

namespace slsopt {

TheoreticalCurve theoretical_overlay(RateKind kind, const RateBound& rate, double dist0_sq,
                                     long iterations, const SaddleOracle::SigmaBounds* sigma) {
  TheoreticalCurve curve;
  curve.kind = kind;
  if (iterations < 0) throw std::invalid_argument("theoretical_overlay: negative horizon");

  switch (kind) {
    case RateKind::SgdContraction:
    case RateKind::SegContraction:
    case RateKind::BilinearContraction: {
      double factor = 0.0;
      if (kind == RateKind::SgdContraction) factor = rate.sgd_contraction_factor();
      else if (kind == RateKind::SegContraction) factor = rate.seg_contraction_factor();
      else {
        if (!sigma)
          throw std::invalid_argument("theoretical_overlay: bilinear kind needs sigma bounds");
        factor = RateBound::bilinear_contraction_factor(sigma->sigma_min_mean,
                                                        sigma->sigma_max_component,
                                                        rate.eta_max);
      }
      curve.factor_or_constant = factor;
      if (!(factor > 0.0 && factor < 1.0)) {
        curve.hypotheses_ok = false;
        curve.warning = "contraction factor outside (0,1); hypotheses not met";
      }
      double v = dist0_sq;
      curve.values.reserve(static_cast<std::size_t>(iterations));
      for (long k = 1; k <= iterations; ++k) {
        v *= factor;
        curve.values.push_back(v);
      }
      break;
    }
    case RateKind::AveragedEnvelope: {
      if (rate.c <= 0.5) {
        curve.hypotheses_ok = false;
        curve.warning = "averaged-iterate envelope needs c > 1/2";
      }
      const double C = rate.averaged_envelope_constant() * dist0_sq;
      curve.factor_or_constant = C;
      curve.values.reserve(static_cast<std::size_t>(iterations));
      for (long k = 1; k <= iterations; ++k)
        curve.values.push_back(C / static_cast<double>(k));
      break;
    }
  }
  return curve;
}

double estimate_sgc_rho(const FiniteSumOracle& oracle, const std::vector<Vector>& points) {
  if (points.empty()) throw std::invalid_argument("estimate_sgc_rho: no sample points");
  const int n = oracle.components();
  double rho = 0.0;
  bool any = false;
  for (const auto& w : points) {
    Vector g_full;
    oracle.batch_value_and_gradient(w, full_batch(n), g_full);
    const double denom = g_full.squaredNorm();
    if (denom == 0.0) continue;
    double mean_sq = 0.0;
    Vector g_i;
    for (int i = 0; i < n; ++i) {
      oracle.batch_value_and_gradient(w, Batch{i}, g_i);
      mean_sq += g_i.squaredNorm();
    }
    mean_sq /= static_cast<double>(n);
    rho = std::max(rho, mean_sq / denom);
    any = true;
  }
  if (!any)
    throw std::runtime_error("estimate_sgc_rho: full gradient vanished at every sample point");
  return rho;
}

}  // namespace slsopt
