#pragma once

#include <functional>

#include "subfrac/core.hpp"
#include "subfrac/operators.hpp"

namespace subfrac {

using RhsFn = std::function<double(double t, double y)>;

/// Caputo-type initial value problem on [0, h]:
///   D^{alpha,rho}_c psi = rhs(t, psi),  D^{k,rho} psi(0) = b_k, k < m.
/// K is the tube radius around the initial-data series, h_star the horizon
/// of the tube, M a sup bound of |rhs| on the tube and L its Lipschitz
/// constant in y. K, h_star, M, L are hypotheses supplied by the caller,
/// not estimated (see lipschitz_probe for a diagnostic).
struct IvpProblem {
  OperatorParams params;  // params.a must be 0
  RhsFn rhs;
  InitialData initial;
  double K = 1.0;
  double h_star = 1.0;
  double M = 1.0;
  double L = 1.0;

  void validate() const;
};

enum class SolveMethod { picard, product_step };

struct SolverConfig {
  int n = 512;
  double picard_tol = 1e-10;
  int picard_max_iters = 100;
  int corrector_iters = 2;
  SolveMethod method = SolveMethod::picard;
  QuadScheme scheme = QuadScheme::product_trapezoid;
  /// When false, solving past the guaranteed existence interval throws;
  /// true runs anyway (outside the guaranteed regime).
  bool allow_outside_existence = false;

  void validate() const;
};

struct Solution {
  GridFunction grid_fn;
  int iterations_used = 0;
  /// Picard: max observed ratio of successive sup-norm updates.
  /// Product-step: max observed node-local corrector update ratio.
  double contraction_estimate = 0.0;
  /// Heuristic scheme-error scale: du^min(2, 1+alpha) * max(1, sup|psi|).
  double error_estimate = 0.0;
  SolveMethod method = SolveMethod::picard;
};

/// min{h_star, h_tilde, (Gamma(alpha+1) K / M)^(1/(rho alpha))}; h_tilde must
/// satisfy h_tilde < (Gamma(alpha+1)/L)^(1/(rho alpha)) strictly, else throws.
double existence_h(const IvpProblem& problem, double h_tilde);

/// Least upper bound of the horizons existence_h can return, i.e. the sup
/// over admissible h_tilde. Solvers accept h below this (h_tilde strict).
double existence_h_sup(const IvpProblem& problem);

/// One application of the Volterra operator: initial-data series plus the
/// substantial integral of order alpha of f(t_i, psi_i).
GridFunction volterra_rhs_apply(const IvpProblem& problem, const GridFunction& psi,
                                const QuadratureConfig& cfg = {});

/// Whole-interval Picard iteration from psi_0 = initial-data series.
Solution solve_picard(const IvpProblem& problem, double h, const SolverConfig& cfg = {});

/// Time-stepping solver: product-rectangle predictor, product-trapezoid
/// corrector with a fixed number of node-local passes.
Solution solve_product_step(const IvpProblem& problem, double h, const SolverConfig& cfg = {});

Solution solve(const IvpProblem& problem, double h, const SolverConfig& cfg = {});

/// Sampled region H: 0 <= t <= h, |y - initial-data series| <= K.
struct HRegion {
  OperatorParams params;
  InitialData initial;
  double K = 1.0;
  double h = 1.0;
};

/// Max sampled difference quotient |f(t,y1)-f(t,y2)|/|y1-y2| over the region;
/// a lower bound on the Lipschitz constant, for diagnostics only.
double lipschitz_probe(const RhsFn& rhs, const HRegion& region, int samples);

}  // namespace subfrac
