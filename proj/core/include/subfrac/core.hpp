#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace subfrac {

/// Parameter triple (sigma, rho, alpha) plus lower limit a shared by every
/// operator: tempering rate sigma (any sign), power exponent rho > 0,
/// fractional order alpha > 0, lower limit a >= 0.
struct OperatorParams {
  double sigma = 0.0;
  double rho = 1.0;
  double alpha = 1.0;
  double a = 0.0;

  void validate() const;

  /// m = ceil(alpha); the number of initial conditions / first-order factors.
  int integer_order() const { return static_cast<int>(std::ceil(alpha)); }

  OperatorParams with_alpha(double new_alpha) const {
    OperatorParams p = *this;
    p.alpha = new_alpha;
    return p;
  }
};

double to_u(double t, const OperatorParams& params);    // t^rho
double from_u(double u, const OperatorParams& params);  // u^(1/rho)

/// Nodes t_0 < ... < t_n with u_i = t_i^rho uniformly spaced on [a^rho, t_end^rho].
class Grid {
 public:
  Grid(double a, double t_end, int n, double rho);

  int intervals() const { return n_; }
  std::size_t size() const { return t_.size(); }
  double lower() const { return a_; }
  double upper() const { return t_end_; }
  double rho() const { return rho_; }
  double du() const { return du_; }
  double u_lower() const { return u_a_; }
  double u(int i) const { return u_a_ + du_ * i; }
  double t(int i) const { return t_[i]; }
  const std::vector<double>& t_nodes() const { return t_; }

  bool compatible(const OperatorParams& params) const {
    return a_ == params.a && rho_ == params.rho;
  }

 private:
  double a_, t_end_, rho_, u_a_, du_;
  int n_;
  std::vector<double> t_;
};

/// Function samples on a Grid; the universal numerical representation.
struct GridFunction {
  Grid grid;
  std::vector<double> values;

  void validate() const;  // size match and all values finite
  double sup_norm() const;
};

template <class F>
GridFunction sample(const Grid& grid, F&& fn) {
  GridFunction out{grid, std::vector<double>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i)
    out.values[i] = fn(grid.t(static_cast<int>(i)));
  out.validate();
  return out;
}

/// Pointwise e^(sign * sigma * t^rho) * f; sign must be +1 or -1.
GridFunction conjugate(const GridFunction& f, int sign, const OperatorParams& params);

/// The closed-form family (t^rho - a^rho)^beta * e^(-sigma t^rho), beta > -1.
struct PowerExpSpec {
  double beta;
  OperatorParams params;

  void validate() const;
};

double power_exp_eval(const PowerExpSpec& spec, double t);
GridFunction sample_power_exp(const PowerExpSpec& spec, const Grid& grid);

}  // namespace subfrac
