#include "subfrac/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "subfrac/operators.hpp"
#include "subfrac/special.hpp"

namespace subfrac {

namespace {

const char* method_name(SolveMethod m) {
  return m == SolveMethod::picard ? "picard" : "product_step";
}

std::string json_number(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

double envelope_ml(const IvpProblem& pb, double h) {
  const double z = pb.L * std::pow(h, pb.params.rho * pb.params.alpha);
  return mittag_leffler(pb.params.alpha, z);
}

}  // namespace

double gronwall_bound_nondecreasing(double q_val, double g_val, const OperatorParams& params,
                                    double t, const MlSeriesConfig& ml) {
  params.validate();
  if (!(q_val >= 0.0) || !(g_val >= 0.0))
    throw std::invalid_argument("gronwall_bound_nondecreasing: q and g must be non-negative");
  if (!(t >= params.a)) throw std::domain_error("gronwall_bound_nondecreasing: t below a");
  const double d = std::pow(t, params.rho) - std::pow(params.a, params.rho);
  const double arg = g_val * gamma_fn(params.alpha) * std::pow(d / params.rho, params.alpha);
  return q_val * mittag_leffler(params.alpha, arg, ml);
}

GridFunction gronwall_series_bound(const GronwallInput& input, int k_max,
                                   bool* truncation_warning, const QuadratureConfig& cfg) {
  input.params.validate();
  input.q.validate();
  if (k_max < 1) throw std::invalid_argument("gronwall_series_bound: k_max must be >= 1");
  if (!input.g) throw std::invalid_argument("gronwall_series_bound: g not set");
  const Grid& grid = input.q.grid;
  if (!grid.compatible(input.params))
    throw std::invalid_argument("gronwall_series_bound: grid/params mismatch");

  std::vector<double> gvals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    gvals[i] = input.g(grid.t(static_cast<int>(i)));
    if (!(gvals[i] >= 0.0))
      throw std::invalid_argument("gronwall_series_bound: g must be non-negative");
    if (i > 0 && gvals[i] < gvals[i - 1] - 1e-12 * std::abs(gvals[i - 1]))
      throw std::invalid_argument("gronwall_series_bound: g must be non-decreasing");
  }
  for (double qv : input.q.values)
    if (!(qv >= 0.0)) throw std::invalid_argument("gronwall_series_bound: q must be non-negative");

  const double ga = gamma_fn(input.params.alpha);
  std::vector<double> out = input.q.values;
  std::vector<double> last_term(grid.size(), 0.0);
  for (int k = 1; k <= k_max; ++k) {
    const double mu = k * input.params.alpha;
    GridFunction ik = substantial_integral(input.params.with_alpha(mu), input.q, cfg);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double coef = std::pow(gvals[i] * ga / std::pow(input.params.rho, input.params.alpha),
                                   static_cast<double>(k));
      last_term[i] = coef * ik.values[i];
      out[i] += last_term[i];
    }
  }
  if (truncation_warning) {
    *truncation_warning = false;
    for (std::size_t i = 0; i < out.size(); ++i)
      if (out[i] > 0.0 && last_term[i] > 1e-8 * out[i]) *truncation_warning = true;
  }
  return GridFunction{grid, std::move(out)};
}

std::string to_json(const PerturbationReport& r) {
  std::ostringstream os;
  os << "{\"epsilon\": " << json_number(r.epsilon)
     << ", \"epsilon_tilde\": " << json_number(r.epsilon_tilde)
     << ", \"sup_diff\": " << json_number(r.sup_diff) << ", \"bound\": " << json_number(r.bound)
     << ", \"ratio\": " << json_number(r.ratio) << ", \"n\": " << r.n
     << ", \"h\": " << json_number(r.h) << ", \"method\": \"" << method_name(r.method) << "\"";
  if (r.v0) os << ", \"v0\": " << json_number(*r.v0);
  if (r.kernel_integral) os << ", \"kernel_integral\": " << json_number(*r.kernel_integral);
  if (r.epsilon_tube) os << ", \"epsilon_tube\": " << json_number(*r.epsilon_tube);
  os << "}";
  return os.str();
}

PerturbationReport dependence_initial(const IvpProblem& problem, const InitialData& c, double h,
                                      const SolverConfig& cfg) {
  problem.validate();
  if (c.b.size() != problem.initial.b.size())
    throw std::invalid_argument("dependence_initial: perturbed data length mismatch");
  IvpProblem other = problem;
  other.initial = c;

  Solution s1 = solve(problem, h, cfg);
  Solution s2 = solve(other, h, cfg);

  double eps = 0.0;
  for (std::size_t k = 0; k < c.b.size(); ++k)
    eps = std::max(eps, std::abs(problem.initial.b[k] - c.b[k]));
  double sup_diff = 0.0;
  for (std::size_t i = 0; i < s1.grid_fn.values.size(); ++i)
    sup_diff = std::max(sup_diff, std::abs(s1.grid_fn.values[i] - s2.grid_fn.values[i]));

  const int m = problem.params.integer_order();
  double series = 0.0, fact = 1.0;
  for (int k = 0; k < m; ++k) {
    if (k > 0) fact *= k;
    series += std::pow(h, problem.params.rho * k) / fact;
  }
  PerturbationReport rep;
  rep.epsilon = eps;
  rep.epsilon_tilde = 0.0;
  rep.sup_diff = sup_diff;
  rep.bound = m * eps * series * envelope_ml(problem, h);
  rep.ratio = eps > 0.0 ? sup_diff / eps : 0.0;
  rep.n = cfg.n;
  rep.h = h;
  rep.method = cfg.method;
  return rep;
}

PerturbationReport dependence_force(const IvpProblem& problem, const RhsFn& f_tilde, double h,
                                    const SolverConfig& cfg) {
  problem.validate();
  if (!f_tilde) throw std::invalid_argument("dependence_force: f_tilde not set");
  IvpProblem other = problem;
  other.rhs = f_tilde;

  Solution s1 = solve(problem, h, cfg);
  Solution s2 = solve(other, h, cfg);

  const GridFunction& phi = s2.grid_fn;
  double eps = 0.0, eps_tube = 0.0;
  for (std::size_t i = 0; i < phi.values.size(); ++i) {
    const double t = phi.grid.t(static_cast<int>(i));
    const double y = phi.values[i];
    eps = std::max(eps, std::abs(problem.rhs(t, y) - f_tilde(t, y)));
    const double center = initial_series(problem.params, problem.initial, t);
    for (double corner : {center - problem.K, center + problem.K})
      eps_tube =
          std::max(eps_tube, std::abs(problem.rhs(t, corner) - f_tilde(t, corner)));
  }
  eps_tube = std::max(eps_tube, eps);

  double sup_diff = 0.0;
  for (std::size_t i = 0; i < s1.grid_fn.values.size(); ++i)
    sup_diff = std::max(sup_diff, std::abs(s1.grid_fn.values[i] - s2.grid_fn.values[i]));

  const double ra = problem.params.rho * problem.params.alpha;
  PerturbationReport rep;
  rep.epsilon = eps;
  rep.epsilon_tilde = 0.0;
  rep.sup_diff = sup_diff;
  rep.bound = eps * std::pow(h, ra) / gamma_fn(problem.params.alpha + 1.0) * envelope_ml(problem, h);
  rep.ratio = eps > 0.0 ? sup_diff / eps : 0.0;
  rep.n = cfg.n;
  rep.h = h;
  rep.method = cfg.method;
  rep.epsilon_tube = eps_tube;
  return rep;
}

double order_kernel_v0(double alpha, double alpha_tilde) {
  if (!(alpha_tilde > alpha))
    throw std::domain_error("order_kernel_v0: requires alpha_tilde > alpha");
  return std::pow(gamma_fn(alpha_tilde) / gamma_fn(alpha), 1.0 / (alpha_tilde - alpha));
}

double order_kernel_integral(double alpha, double alpha_tilde, double W) {
  if (!(W >= 0.0)) throw std::domain_error("order_kernel_integral: W must be non-negative");
  if (alpha_tilde == alpha) return 0.0;
  if (!(alpha_tilde > alpha))
    throw std::domain_error("order_kernel_integral: requires alpha_tilde >= alpha");
  const double inv_ga1 = 1.0 / gamma_fn(alpha + 1.0);
  const double inv_gat1 = 1.0 / gamma_fn(alpha_tilde + 1.0);
  auto antider = [&](double w) {
    return std::pow(w, alpha) * inv_ga1 - std::pow(w, alpha_tilde) * inv_gat1;
  };
  const double v0 = order_kernel_v0(alpha, alpha_tilde);
  if (W <= v0) return antider(W);
  return 2.0 * antider(v0) - antider(W);
}

PerturbationReport dependence_order(const IvpProblem& problem, double alpha_tilde,
                                    const InitialData& b_extra, double h,
                                    const SolverConfig& cfg) {
  problem.validate();
  if (!(alpha_tilde >= problem.params.alpha))
    throw std::invalid_argument("dependence_order: alpha_tilde must be >= alpha");
  const int m = problem.params.integer_order();
  const int m_tilde = static_cast<int>(std::ceil(alpha_tilde));
  if (b_extra.b.size() != static_cast<std::size_t>(m_tilde - m))
    throw std::invalid_argument(
        "dependence_order: need exactly ceil(alpha_tilde) - ceil(alpha) extra initial values");

  IvpProblem other = problem;
  other.params.alpha = alpha_tilde;
  other.initial.b.insert(other.initial.b.end(), b_extra.b.begin(), b_extra.b.end());

  Solution s1 = solve(problem, h, cfg);
  Solution s2 = solve(other, h, cfg);

  double sup_diff = 0.0;
  for (std::size_t i = 0; i < s1.grid_fn.values.size(); ++i)
    sup_diff = std::max(sup_diff, std::abs(s1.grid_fn.values[i] - s2.grid_fn.values[i]));

  const double eps = alpha_tilde - problem.params.alpha;
  double eps_tilde = 0.0;
  for (double bk : b_extra.b) eps_tilde = std::max(eps_tilde, std::abs(bk));

  PerturbationReport rep;
  rep.epsilon = eps;
  rep.epsilon_tilde = eps_tilde;
  rep.sup_diff = sup_diff;
  rep.n = cfg.n;
  rep.h = h;
  rep.method = cfg.method;

  const double W = std::pow(h, problem.params.rho);
  const double J = order_kernel_integral(problem.params.alpha, alpha_tilde, W);
  rep.kernel_integral = J;
  if (eps > 0.0) rep.v0 = order_kernel_v0(problem.params.alpha, alpha_tilde);

  double q_const = problem.M * J;
  double fact = 1.0;
  for (int k = 1; k <= m_tilde - 1; ++k) {
    fact *= k;
    if (k >= m)
      q_const += std::abs(other.initial.b[static_cast<std::size_t>(k)]) *
                 std::pow(h, problem.params.rho * k) / fact;
  }
  rep.bound = q_const * envelope_ml(problem, h);
  rep.ratio = (eps + eps_tilde) > 0.0 ? sup_diff / (eps + eps_tilde) : 0.0;
  return rep;
}

}  // namespace subfrac
