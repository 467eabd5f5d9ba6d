#include "subfrac/operators.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "subfrac/special.hpp"

namespace subfrac {

namespace {

// Riemann-Liouville integral of order mu > 0 of samples g on a uniform grid
// with spacing du, evaluated at every node. Product integration: the kernel
// (U - u)^(mu-1) is integrated exactly against a piecewise-constant
// (rectangle, left endpoint) or piecewise-linear (trapezoid) interpolant of
// g. Weights are assembled from powers of the physical lengths k*du so that
// large mu does not overflow intermediates.
std::vector<double> rl_integral_all(double mu, double du, const std::vector<double>& g,
                                    QuadScheme scheme) {
  const int n = static_cast<int>(g.size()) - 1;
  std::vector<double> out(g.size(), 0.0);
  if (scheme == QuadScheme::product_rectangle) {
    std::vector<double> q(g.size());  // (k du)^mu
    for (int k = 0; k <= n; ++k) q[k] = std::pow(k * du, mu);
    const double inv_gamma = 1.0 / gamma_fn(mu + 1.0);
    for (int j = 1; j <= n; ++j) {
      double acc = 0.0;
      for (int i = 0; i < j; ++i) acc += (q[j - i] - q[j - i - 1]) * g[i];
      out[j] = inv_gamma * acc;
    }
    return out;
  }
  // product trapezoid
  std::vector<double> p(g.size() + 1), q(g.size());
  for (int k = 0; k <= n + 1; ++k) p[k] = std::pow(k * du, mu + 1.0);
  for (int k = 0; k <= n; ++k) q[k] = std::pow(k * du, mu);
  std::vector<double> c(g.size());  // interior convolution weights, index >= 1
  for (int k = 1; k <= n; ++k) c[k] = (p[k + 1] - 2.0 * p[k] + p[k - 1]) / du;
  const double diag = std::pow(du, mu);
  const double inv_gamma = 1.0 / gamma_fn(mu + 2.0);
  for (int j = 1; j <= n; ++j) {
    double head = p[j - 1] / du - (j - mu - 1.0) * q[j];
    double acc = head * g[0] + diag * g[j];
    for (int i = 1; i < j; ++i) acc += c[j - i] * g[i];
    out[j] = inv_gamma * acc;
  }
  return out;
}

void require_compatible(const OperatorParams& params, const GridFunction& f,
                        const QuadratureConfig& cfg) {
  params.validate();
  cfg.validate();
  f.validate();
  if (!f.grid.compatible(params)) {
    std::ostringstream os;
    os << "grid built with (a = " << f.grid.lower() << ", rho = " << f.grid.rho()
       << ") does not match operator parameters (a = " << params.a << ", rho = " << params.rho
       << ")";
    throw std::invalid_argument(os.str());
  }
  if (f.grid.intervals() < cfg.n_min)
    throw std::invalid_argument("grid has fewer intervals than QuadratureConfig::n_min");
}

// Tempered RL integral of order mu in u, realized by conjugation with the
// exponential shifted to the lower limit (never interpolated into the kernel).
GridFunction tempered_integral(const OperatorParams& params, double mu, const GridFunction& f,
                               const QuadratureConfig& cfg) {
  const double sigma = params.sigma;
  const double ua = f.grid.u_lower();
  std::vector<double> g(f.values.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = std::exp(sigma * (f.grid.u(static_cast<int>(i)) - ua)) * f.values[i];
    if (!std::isfinite(g[i]))
      throw std::overflow_error("substantial_integral: conjugation factor not representable");
  }
  std::vector<double> raw = rl_integral_all(mu, f.grid.du(), g, cfg.scheme);
  GridFunction out{f.grid, std::move(raw)};
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] *= std::exp(-sigma * (f.grid.u(static_cast<int>(i)) - ua));
  return out;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (n_min < 2) throw std::invalid_argument("QuadratureConfig: n_min must be >= 2");
}

GridFunction substantial_integral(const OperatorParams& params, const GridFunction& f,
                                  const QuadratureConfig& cfg) {
  require_compatible(params, f, cfg);
  return tempered_integral(params, params.alpha, f, cfg);
}

double substantial_integral_power(const PowerExpSpec& spec, double alpha, double t) {
  spec.validate();
  if (!(alpha > 0.0)) throw std::domain_error("substantial_integral_power: alpha must be positive");
  if (!(t >= spec.params.a)) throw std::domain_error("substantial_integral_power: t below a");
  const double d = std::pow(t, spec.params.rho) - std::pow(spec.params.a, spec.params.rho);
  return gamma_fn(spec.beta + 1.0) * reciprocal_gamma(alpha + spec.beta + 1.0) *
         std::exp(-spec.params.sigma * std::pow(t, spec.params.rho)) *
         std::pow(d, alpha + spec.beta);
}

double substantial_derivative_power(const PowerExpSpec& spec, double alpha, double t) {
  spec.validate();
  if (!(alpha > 0.0)) throw std::domain_error("substantial_derivative_power: alpha must be positive");
  if (!(t >= spec.params.a)) throw std::domain_error("substantial_derivative_power: t below a");
  const double d = std::pow(t, spec.params.rho) - std::pow(spec.params.a, spec.params.rho);
  const double coef = gamma_fn(spec.beta + 1.0) * reciprocal_gamma(spec.beta - alpha + 1.0);
  if (coef == 0.0) return 0.0;  // derivative annihilates this power
  return coef * std::exp(-spec.params.sigma * std::pow(t, spec.params.rho)) *
         std::pow(d, spec.beta - alpha);
}

GridFunction sigma_d_m_rho(const OperatorParams& params, const GridFunction& f, int m) {
  params.validate();
  f.validate();
  if (m < 1) throw std::invalid_argument("sigma_d_m_rho: m must be >= 1");
  if (f.grid.size() < static_cast<std::size_t>(m) + 2)
    throw std::invalid_argument("sigma_d_m_rho: grid too small for requested order");
  const double du = f.grid.du();
  const double sigma = params.sigma;
  const int n = f.grid.intervals();
  std::vector<double> cur = f.values, next(cur.size());
  for (int pass = 0; pass < m; ++pass) {
    // three-point one-sided stencils keep the boundary second order; a
    // first-order stencil there would leave an O(1) residue two nodes in
    // after the second pass
    next[0] = (-3.0 * cur[0] + 4.0 * cur[1] - cur[2]) / (2.0 * du) + sigma * cur[0];
    for (int i = 1; i < n; ++i) next[i] = (cur[i + 1] - cur[i - 1]) / (2.0 * du) + sigma * cur[i];
    next[n] = (3.0 * cur[n] - 4.0 * cur[n - 1] + cur[n - 2]) / (2.0 * du) + sigma * cur[n];
    std::swap(cur, next);
  }
  return GridFunction{f.grid, std::move(cur)};
}

GridFunction substantial_rl_derivative(const OperatorParams& params, const GridFunction& f,
                                       const QuadratureConfig& cfg) {
  require_compatible(params, f, cfg);
  const int m = params.integer_order();
  if (params.alpha == static_cast<double>(m)) return sigma_d_m_rho(params, f, m);
  GridFunction inner = tempered_integral(params, m - params.alpha, f, cfg);
  return sigma_d_m_rho(params, inner, m);
}

GridFunction substantial_caputo_derivative(const OperatorParams& params, const GridFunction& f,
                                           const QuadratureConfig& cfg) {
  require_compatible(params, f, cfg);
  const int m = params.integer_order();
  if (params.alpha == static_cast<double>(m)) return sigma_d_m_rho(params, f, m);
  GridFunction inner = sigma_d_m_rho(params, f, m);
  return tempered_integral(params, m - params.alpha, inner, cfg);
}

double initial_series(const OperatorParams& params, const InitialData& data, double t) {
  params.validate();
  const double d = std::pow(t, params.rho) - std::pow(params.a, params.rho);
  double sum = 0.0, fact = 1.0, pw = 1.0;
  for (std::size_t k = 0; k < data.b.size(); ++k) {
    if (k > 0) {
      fact *= static_cast<double>(k);
      pw *= d;
    }
    sum += data.b[k] * pw / fact;
  }
  return std::exp(-params.sigma * d) * sum;
}

GridFunction caputo_taylor_reconstruct(const OperatorParams& params, const GridFunction& f,
                                       const InitialData& data, const QuadratureConfig& cfg) {
  const int m = params.integer_order();
  if (data.b.size() != static_cast<std::size_t>(m))
    throw std::invalid_argument("caputo_taylor_reconstruct: initial data length must equal ceil(alpha)");
  GridFunction dc = substantial_caputo_derivative(params, f, cfg);
  GridFunction rec = substantial_integral(params, dc, cfg);
  for (std::size_t i = 0; i < rec.values.size(); ++i)
    rec.values[i] += initial_series(params, data, rec.grid.t(static_cast<int>(i)));
  return rec;
}

GridFunction rl_inversion_remainder(const OperatorParams& params, const GridFunction& f,
                                    const QuadratureConfig& cfg) {
  if (!(params.alpha > 0.0) || !(params.alpha < 1.0))
    throw std::domain_error("rl_inversion_remainder: requires 0 < alpha < 1");
  GridFunction d = substantial_rl_derivative(params, f, cfg);
  return substantial_integral(params, d, cfg);
}

InitialData power_exp_initial_data(const PowerExpSpec& spec, int m) {
  spec.validate();
  if (m < 1) throw std::invalid_argument("power_exp_initial_data: m must be >= 1");
  const double ua = std::pow(spec.params.a, spec.params.rho);
  InitialData out;
  out.b.resize(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const double bk = spec.beta - k;
    if (bk > 0.0) {
      out.b[k] = 0.0;
    } else if (bk == 0.0) {
      out.b[k] = gamma_fn(spec.beta + 1.0) * std::exp(-spec.params.sigma * ua);
    } else if (spec.beta == std::floor(spec.beta)) {
      out.b[k] = 0.0;  // polynomial annihilated beyond its degree
    } else {
      throw std::domain_error("power_exp_initial_data: derivative unbounded at a for this beta");
    }
  }
  return out;
}

InitialData initial_data_from_samples(const OperatorParams& params, const GridFunction& f, int m) {
  if (m < 1) throw std::invalid_argument("initial_data_from_samples: m must be >= 1");
  InitialData out;
  out.b.resize(static_cast<std::size_t>(m));
  out.b[0] = f.values.at(0);
  GridFunction cur = f;
  for (int k = 1; k < m; ++k) {
    cur = sigma_d_m_rho(params, cur, 1);
    out.b[k] = cur.values[0];
  }
  return out;
}

}  // namespace subfrac
