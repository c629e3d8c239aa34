#pragma once

#include <algorithm>
#include <cmath>

namespace slsopt {

/// Constants feeding the theoretical convergence-rate curves.
/// mu_bar: average strong-convexity / restricted-secant constant.
/// rho: strong-growth constant E_i‖∇f_i‖² ≤ ρ‖∇f‖² (user-supplied or an
/// empirical lower estimate; no closed form exists for the benchmarks).
struct RateBound {
  double mu_bar = 0.0;
  double L_max = 0.0;
  double eta_max = 1.0;
  double c = 0.5;
  double rho = 1.0;

  /// Per-iteration contraction of E‖w_k − w*‖² for line-search SGD on
  /// strongly-convex interpolated sums: max{1 − μ̄/L_max, 1 − μ̄·η_max}.
  double sgd_contraction_factor() const {
    return std::max(1.0 - mu_bar / L_max, 1.0 - mu_bar * eta_max);
  }

  /// Constant C of the averaged-iterate envelope C/T for convex sums
  /// (requires c > 1/2): C = c·max{L_max/(2(1−c)), 1/η_max}/(2c−1).
  /// Multiply by ‖w0 − w*‖² to get the curve.
  double averaged_envelope_constant() const {
    return c * std::max(L_max / (2.0 * (1.0 - c)), 1.0 / eta_max) / (2.0 * c - 1.0);
  }

  /// Per-iteration contraction for extra-gradient with the Lipschitz search
  /// on RSI / strongly-monotone interpolated sums:
  /// max{1 − μ̄/(4·L_max), 1 − η_max·μ̄}.
  double seg_contraction_factor() const {
    return std::max(1.0 - mu_bar / (4.0 * L_max), 1.0 - eta_max * mu_bar);
  }

  /// Per-iteration contraction for extra-gradient on interpolated bilinear
  /// games, from the operator's singular-value bounds.
  static double bilinear_contraction_factor(double sigma_min_mean,
                                            double sigma_max_component,
                                            double eta_max) {
    return std::max(1.0 - sigma_min_mean / (4.0 * sigma_max_component),
                    1.0 - 0.5 * eta_max * sigma_min_mean);
  }

  /// δ = (η_max + η_min) − ρ(η_max − η_min + L·η_max²) with
  /// η_min = min{2(1−c)/L_max, η_max}, taking L = L_max. Positive δ is what
  /// the non-convex O(1/T) guarantee under strong growth needs.
  double sgc_margin() const {
    const double eta_min = std::min(2.0 * (1.0 - c) / L_max, eta_max);
    return (eta_max + eta_min) - rho * (eta_max - eta_min + L_max * eta_max * eta_max);
  }
};

}  // namespace slsopt
