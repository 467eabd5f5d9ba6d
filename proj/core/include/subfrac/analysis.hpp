#pragma once

#include <functional>
#include <optional>
#include <string>

#include "subfrac/core.hpp"
#include "subfrac/special.hpp"
#include "subfrac/volterra.hpp"

namespace subfrac {

/// Inputs of the integral inequality: p the bounded quantity, q >= 0 the
/// inhomogeneity, g >= 0 non-decreasing (spot-checked on the grid).
struct GronwallInput {
  GridFunction p;
  GridFunction q;
  std::function<double(double)> g;
  OperatorParams params;
};

/// q * E_alpha(g * Gamma(alpha) * ((t^rho - a^rho)/rho)^alpha) -- the
/// non-decreasing-q form of the bound.
double gronwall_bound_nondecreasing(double q_val, double g_val, const OperatorParams& params,
                                    double t, const MlSeriesConfig& ml = {});

/// Truncated iterated-kernel series bound, evaluated by nested product
/// integration; sets *truncation_warning when the k_max term still exceeds
/// 1e-8 of the running sum somewhere on the grid.
GridFunction gronwall_series_bound(const GronwallInput& input, int k_max,
                                   bool* truncation_warning = nullptr,
                                   const QuadratureConfig& cfg = {});

/// Outcome of one continuous-dependence experiment: measured sup-norm
/// deviation against the theoretical envelope.
struct PerturbationReport {
  double epsilon = 0.0;
  double epsilon_tilde = 0.0;
  double sup_diff = 0.0;
  double bound = 0.0;
  double ratio = 0.0;  // sup_diff/epsilon, or sup_diff/(epsilon+epsilon_tilde)
  int n = 0;
  double h = 0.0;
  SolveMethod method = SolveMethod::picard;
  // order experiment only
  std::optional<double> v0;
  std::optional<double> kernel_integral;
  // force experiment only: epsilon re-sampled over the K-tube corners
  std::optional<double> epsilon_tube;
};

std::string to_json(const PerturbationReport& report);

/// Solve with initial data b then c; epsilon = max_k |b_k - c_k|, bound
/// m epsilon sum_k h^(rho k)/k! * E_alpha(L h^(rho alpha)).
PerturbationReport dependence_initial(const IvpProblem& problem, const InitialData& c, double h,
                                      const SolverConfig& cfg = {});

/// Solve with rhs f then f_tilde (same data); epsilon = max over the grid of
/// |f - f_tilde| along the perturbed trajectory, bound
/// epsilon h^(rho alpha)/Gamma(alpha+1) * E_alpha(L h^(rho alpha)).
PerturbationReport dependence_force(const IvpProblem& problem, const RhsFn& f_tilde, double h,
                                    const SolverConfig& cfg = {});

/// Zero of the kernel difference v^(alpha-1)/Gamma(alpha) - v^(at-1)/Gamma(at).
double order_kernel_v0(double alpha, double alpha_tilde);

/// int_0^W |v^(alpha-1)/Gamma(alpha) - v^(at-1)/Gamma(at)| dv in closed form,
/// split at v0 when W > v0.
double order_kernel_integral(double alpha, double alpha_tilde, double W);

/// Solve at order alpha then alpha_tilde > alpha (extra b_k required when
/// ceil(alpha_tilde) > ceil(alpha)); epsilon = alpha_tilde - alpha and
/// epsilon_tilde = max of the extra |b_k| (0 when the ceilings agree).
PerturbationReport dependence_order(const IvpProblem& problem, double alpha_tilde,
                                    const InitialData& b_extra, double h,
                                    const SolverConfig& cfg = {});

}  // namespace subfrac
