#pragma once

#include <vector>

#include "subfrac/core.hpp"

namespace subfrac {

enum class QuadScheme { product_rectangle, product_trapezoid };

/// Product-integration controls. The smooth factor of the integrand is
/// interpolated piecewise-constant (rectangle) or piecewise-linear
/// (trapezoid) in u while the power kernel is integrated exactly.
struct QuadratureConfig {
  QuadScheme scheme = QuadScheme::product_trapezoid;
  int n_min = 2;

  void validate() const;
};

/// Values b_0..b_{m-1} of the first-order operators applied to f at the
/// lower limit; length must equal ceil(alpha) of the consuming operator.
struct InitialData {
  std::vector<double> b;
};

/// Generalized substantial fractional integral of order params.alpha on the
/// grid of f. Evaluated as e^(-sigma u) x (Riemann-Liouville integral in
/// u = t^rho of the e^(+sigma u)-conjugated samples); node 0 is exactly 0.
GridFunction substantial_integral(const OperatorParams& params, const GridFunction& f,
                                  const QuadratureConfig& cfg = {});

/// Closed form of the integral of order `alpha` applied to the power-exp
/// family: Gamma(beta+1)/Gamma(alpha+beta+1) e^(-sigma t^rho) (t^rho-a^rho)^(alpha+beta).
double substantial_integral_power(const PowerExpSpec& spec, double alpha, double t);

/// Closed form of the RL/Caputo derivative of order `alpha` of the power-exp
/// family: Gamma(beta+1)/Gamma(beta-alpha+1) e^(-sigma t^rho) (t^rho-a^rho)^(beta-alpha).
double substantial_derivative_power(const PowerExpSpec& spec, double alpha, double t);

/// m-th power of the first-order operator (d/du + sigma), realized by finite
/// differences in u: second-order central stencils at interior nodes,
/// second-order three-point one-sided stencils at the two boundary nodes.
GridFunction sigma_d_m_rho(const OperatorParams& params, const GridFunction& f, int m);

/// Riemann-Liouville type derivative: D^{m,rho} after the (m-alpha)-integral.
/// Integer alpha dispatches to sigma_d_m_rho. Accuracy near t = a is reduced
/// (one-sided stencils against the kernel endpoint).
GridFunction substantial_rl_derivative(const OperatorParams& params, const GridFunction& f,
                                       const QuadratureConfig& cfg = {});

/// Caputo type derivative: (m-alpha)-integral after D^{m,rho}.
GridFunction substantial_caputo_derivative(const OperatorParams& params, const GridFunction& f,
                                           const QuadratureConfig& cfg = {});

/// e^(-sigma (t^rho-a^rho)) sum_{k<m} b_k (t^rho-a^rho)^k / k!  -- the
/// initial-data series shared by the Taylor identity and the Volterra
/// equation right-hand side.
double initial_series(const OperatorParams& params, const InitialData& data, double t);

/// Integral (order alpha) of the Caputo derivative plus the initial-data
/// series; equals f up to scheme error.
GridFunction caputo_taylor_reconstruct(const OperatorParams& params, const GridFunction& f,
                                       const InitialData& data, const QuadratureConfig& cfg = {});

/// Integral (order alpha) of the RL derivative, 0 < alpha < 1; equals f up to
/// scheme error when f is bounded at a (the endpoint correction vanishes).
GridFunction rl_inversion_remainder(const OperatorParams& params, const GridFunction& f,
                                    const QuadratureConfig& cfg = {});

/// Analytic values of the first-order operators of the power-exp family at a:
/// b_k = Gamma(beta+1)/Gamma(beta-k+1) * (t^rho-a^rho)^(beta-k) e^(-sigma a^rho) at t=a.
InitialData power_exp_initial_data(const PowerExpSpec& spec, int m);

/// b_k estimated from samples by one-sided difference stencils at node 0.
InitialData initial_data_from_samples(const OperatorParams& params, const GridFunction& f, int m);

}  // namespace subfrac
