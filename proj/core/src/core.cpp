#include "subfrac/core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace subfrac {

void OperatorParams::validate() const {
  if (!std::isfinite(sigma) || !std::isfinite(rho) || !std::isfinite(alpha) || !std::isfinite(a))
    throw std::invalid_argument("OperatorParams: parameters must be finite");
  if (!(rho > 0.0)) throw std::invalid_argument("OperatorParams: rho must be positive");
  if (!(alpha > 0.0)) throw std::invalid_argument("OperatorParams: alpha must be positive");
  if (!(a >= 0.0)) throw std::invalid_argument("OperatorParams: a must be non-negative");
}

double to_u(double t, const OperatorParams& params) {
  if (!(t >= 0.0)) throw std::domain_error("to_u: t must be non-negative");
  return std::pow(t, params.rho);
}

double from_u(double u, const OperatorParams& params) {
  if (!(u >= 0.0)) throw std::domain_error("from_u: u must be non-negative");
  return std::pow(u, 1.0 / params.rho);
}

Grid::Grid(double a, double t_end, int n, double rho) : a_(a), t_end_(t_end), rho_(rho), n_(n) {
  if (!(rho > 0.0)) throw std::invalid_argument("Grid: rho must be positive");
  if (!(a >= 0.0)) throw std::invalid_argument("Grid: a must be non-negative");
  if (!(t_end > a)) throw std::invalid_argument("Grid: t_end must exceed a");
  if (n < 1) throw std::invalid_argument("Grid: need at least one interval");
  u_a_ = std::pow(a, rho);
  du_ = (std::pow(t_end, rho) - u_a_) / n;
  t_.resize(static_cast<std::size_t>(n) + 1);
  t_.front() = a;
  t_.back() = t_end;
  for (int i = 1; i < n; ++i) t_[i] = std::pow(u(i), 1.0 / rho);
}

void GridFunction::validate() const {
  if (values.size() != grid.size())
    throw std::invalid_argument("GridFunction: values/grid size mismatch");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("GridFunction: values must be finite");
}

double GridFunction::sup_norm() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

GridFunction conjugate(const GridFunction& f, int sign, const OperatorParams& params) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("conjugate: sign must be +1 or -1");
  f.validate();
  GridFunction out{f.grid, std::vector<double>(f.values.size())};
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    double w = std::exp(sign * params.sigma * f.grid.u(static_cast<int>(i)));
    out.values[i] = w * f.values[i];
    if (!std::isfinite(out.values[i]))
      throw std::overflow_error("conjugate: exponential factor not representable");
  }
  return out;
}

void PowerExpSpec::validate() const {
  params.validate();
  if (!(beta > -1.0)) throw std::invalid_argument("PowerExpSpec: beta must exceed -1");
}

double power_exp_eval(const PowerExpSpec& spec, double t) {
  spec.validate();
  if (!(t >= 0.0)) throw std::domain_error("power_exp_eval: t must be non-negative");
  double d = std::pow(t, spec.params.rho) - std::pow(spec.params.a, spec.params.rho);
  if (t < spec.params.a && spec.beta != std::floor(spec.beta)) {
    std::ostringstream os;
    os << "power_exp_eval: t = " << t << " below lower limit a = " << spec.params.a;
    throw std::domain_error(os.str());
  }
  return std::pow(d, spec.beta) * std::exp(-spec.params.sigma * std::pow(t, spec.params.rho));
}

GridFunction sample_power_exp(const PowerExpSpec& spec, const Grid& grid) {
  return sample(grid, [&](double t) { return power_exp_eval(spec, t); });
}

}  // namespace subfrac
