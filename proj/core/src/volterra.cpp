#include "subfrac/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "subfrac/special.hpp"

namespace subfrac {

namespace {

double splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z = z ^ (z >> 31);
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

double rhs_value(const RhsFn& rhs, double t, double y) {
  double v = rhs(t, y);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "rhs returned non-finite value at t = " << t << ", y = " << y;
    throw std::domain_error(os.str());
  }
  return v;
}

double scheme_error_estimate(const OperatorParams& params, double du, double psi_sup) {
  return std::pow(du, std::min(2.0, 1.0 + params.alpha)) * std::max(1.0, psi_sup);
}

void require_horizon(const IvpProblem& pb, double h, const SolverConfig& cfg) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("solve: h must be positive");
  if (cfg.allow_outside_existence) return;
  const double ra = pb.params.rho * pb.params.alpha;
  const double gam = gamma_fn(pb.params.alpha + 1.0);
  const double h_tilde_sup = std::pow(gam / pb.L, 1.0 / ra);
  const double h_k = std::pow(gam * pb.K / pb.M, 1.0 / ra);
  if (h > pb.h_star || h > h_k || !(h < h_tilde_sup)) {
    std::ostringstream os;
    os << "horizon h = " << h << " lies outside the guaranteed existence interval "
       << "(h* = " << pb.h_star << ", contraction sup = " << h_tilde_sup
       << ", tube bound = " << h_k << "); pass allow_outside_existence to run anyway";
    throw std::domain_error(os.str());
  }
}

}  // namespace

void IvpProblem::validate() const {
  params.validate();
  if (params.a != 0.0) throw std::invalid_argument("IvpProblem: lower limit must be 0");
  if (!rhs) throw std::invalid_argument("IvpProblem: rhs not set");
  if (!(K > 0.0) || !(h_star > 0.0) || !(M > 0.0) || !(L > 0.0))
    throw std::invalid_argument("IvpProblem: K, h_star, M, L must be positive");
  if (initial.b.size() != static_cast<std::size_t>(params.integer_order()))
    throw std::invalid_argument("IvpProblem: initial data length must equal ceil(alpha)");
}

void SolverConfig::validate() const {
  if (n < 2) throw std::invalid_argument("SolverConfig: n must be >= 2");
  if (!(picard_tol > 0.0) || !(picard_tol < 1.0))
    throw std::invalid_argument("SolverConfig: picard_tol must lie in (0, 1)");
  if (picard_max_iters < 1 || corrector_iters < 1)
    throw std::invalid_argument("SolverConfig: iteration counts must be positive");
}

double existence_h(const IvpProblem& problem, double h_tilde) {
  problem.validate();
  if (!(h_tilde > 0.0)) throw std::invalid_argument("existence_h: h_tilde must be positive");
  const double ra = problem.params.rho * problem.params.alpha;
  const double gam = gamma_fn(problem.params.alpha + 1.0);
  const double h_tilde_sup = std::pow(gam / problem.L, 1.0 / ra);
  if (!(h_tilde < h_tilde_sup)) {
    std::ostringstream os;
    os << "existence_h: h_tilde = " << h_tilde << " must be strictly below "
       << h_tilde_sup;
    throw std::invalid_argument(os.str());
  }
  const double h_k = std::pow(gam * problem.K / problem.M, 1.0 / ra);
  return std::min({problem.h_star, h_tilde, h_k});
}

double existence_h_sup(const IvpProblem& problem) {
  problem.validate();
  const double ra = problem.params.rho * problem.params.alpha;
  const double gam = gamma_fn(problem.params.alpha + 1.0);
  const double h_tilde_sup = std::pow(gam / problem.L, 1.0 / ra);
  const double h_k = std::pow(gam * problem.K / problem.M, 1.0 / ra);
  return std::min({problem.h_star, h_tilde_sup, h_k});
}

GridFunction volterra_rhs_apply(const IvpProblem& problem, const GridFunction& psi,
                                const QuadratureConfig& cfg) {
  problem.validate();
  psi.validate();
  GridFunction composed{psi.grid, std::vector<double>(psi.values.size())};
  for (std::size_t i = 0; i < psi.values.size(); ++i)
    composed.values[i] = rhs_value(problem.rhs, psi.grid.t(static_cast<int>(i)), psi.values[i]);
  GridFunction out = substantial_integral(problem.params, composed, cfg);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] += initial_series(problem.params, problem.initial, out.grid.t(static_cast<int>(i)));
  return out;
}

Solution solve_picard(const IvpProblem& problem, double h, const SolverConfig& cfg) {
  problem.validate();
  cfg.validate();
  require_horizon(problem, h, cfg);
  Grid grid(0.0, h, cfg.n, problem.params.rho);
  GridFunction psi =
      sample(grid, [&](double t) { return initial_series(problem.params, problem.initial, t); });
  QuadratureConfig qcfg{cfg.scheme, 2};

  const double scale = std::max(1.0, psi.sup_norm());
  const double ratio_floor = 1e3 * std::numeric_limits<double>::epsilon() * scale;
  double prev_diff = std::numeric_limits<double>::quiet_NaN();
  double max_ratio = 0.0;
  double diff = std::numeric_limits<double>::infinity();

  for (int iter = 1; iter <= cfg.picard_max_iters; ++iter) {
    GridFunction next = volterra_rhs_apply(problem, psi, qcfg);
    diff = 0.0;
    for (std::size_t i = 0; i < next.values.size(); ++i)
      diff = std::max(diff, std::abs(next.values[i] - psi.values[i]));
    psi = std::move(next);
    if (std::isfinite(prev_diff) && prev_diff > ratio_floor && diff > ratio_floor)
      max_ratio = std::max(max_ratio, diff / prev_diff);
    prev_diff = diff;
    if (diff <= cfg.picard_tol) {
      Solution sol{std::move(psi), iter, max_ratio, 0.0, SolveMethod::picard};
      sol.error_estimate = scheme_error_estimate(problem.params, grid.du(), sol.grid_fn.sup_norm());
      return sol;
    }
  }
  std::ostringstream os;
  os << "solve_picard: no convergence after " << cfg.picard_max_iters
     << " iterations (last update " << diff << ", last ratio "
     << (std::isfinite(prev_diff) && prev_diff > 0.0 ? diff / prev_diff : 0.0) << ")";
  throw ConvergenceError(os.str());
}

Solution solve_product_step(const IvpProblem& problem, double h, const SolverConfig& cfg) {
  problem.validate();
  cfg.validate();
  require_horizon(problem, h, cfg);
  Grid grid(0.0, h, cfg.n, problem.params.rho);
  const int n = grid.intervals();
  const double du = grid.du();
  const double mu = problem.params.alpha;
  const double sigma = problem.params.sigma;

  // physical-length kernel moments, as in the whole-grid weights
  std::vector<double> p(static_cast<std::size_t>(n) + 2), q(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n + 1; ++k) p[k] = std::pow(k * du, mu + 1.0);
  for (int k = 0; k <= n; ++k) q[k] = std::pow(k * du, mu);
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int k = 1; k <= n; ++k) c[k] = (p[k + 1] - 2.0 * p[k] + p[k - 1]) / du;
  const double diag = std::pow(du, mu);
  const double inv_g1 = 1.0 / gamma_fn(mu + 1.0);
  const double inv_g2 = 1.0 / gamma_fn(mu + 2.0);

  std::vector<double> psi(static_cast<std::size_t>(n) + 1), G(psi.size());
  std::vector<double> init(psi.size());
  for (int i = 0; i <= n; ++i)
    init[i] = initial_series(problem.params, problem.initial, grid.t(i));
  psi[0] = init[0];
  G[0] = rhs_value(problem.rhs, grid.t(0), psi[0]);  // exp(sigma*0) = 1

  double max_ratio = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double damp = std::exp(-sigma * grid.u(j) + sigma * grid.u_lower());
    double rect = 0.0;
    for (int i = 0; i < j; ++i) rect += (q[j - i] - q[j - i - 1]) * G[i];
    double y = init[j] + damp * inv_g1 * rect;  // predictor

    double lag = (p[j - 1] / du - (j - mu - 1.0) * q[j]) * G[0];
    for (int i = 1; i < j; ++i) lag += c[j - i] * G[i];

    double first_delta = 0.0, last_delta = 0.0;
    const double boost = std::exp(sigma * (grid.u(j) - grid.u_lower()));
    for (int pass = 0; pass < cfg.corrector_iters; ++pass) {
      double gj = boost * rhs_value(problem.rhs, grid.t(j), y);
      double y_new = init[j] + damp * inv_g2 * (lag + diag * gj);
      double delta = std::abs(y_new - y);
      if (pass == 0) first_delta = delta;
      last_delta = delta;
      y = y_new;
    }
    if (!std::isfinite(y) ||
        (cfg.corrector_iters > 1 && last_delta > 10.0 * first_delta && last_delta > 1e-12)) {
      std::ostringstream os;
      os << "solve_product_step: corrector diverging at node " << j << " (t = " << grid.t(j)
         << ")";
      throw ConvergenceError(os.str());
    }
    if (cfg.corrector_iters > 1 && first_delta > 0.0)
      max_ratio = std::max(max_ratio, last_delta / first_delta);
    psi[j] = y;
    G[j] = boost * rhs_value(problem.rhs, grid.t(j), y);
    if (!std::isfinite(G[j]))
      throw std::overflow_error("solve_product_step: conjugated history not representable");
  }

  Solution sol{GridFunction{grid, std::move(psi)}, n, max_ratio, 0.0, SolveMethod::product_step};
  sol.error_estimate = scheme_error_estimate(problem.params, du, sol.grid_fn.sup_norm());
  return sol;
}

Solution solve(const IvpProblem& problem, double h, const SolverConfig& cfg) {
  return cfg.method == SolveMethod::picard ? solve_picard(problem, h, cfg)
                                           : solve_product_step(problem, h, cfg);
}

double lipschitz_probe(const RhsFn& rhs, const HRegion& region, int samples) {
  if (samples < 2) throw std::invalid_argument("lipschitz_probe: need at least 2 samples");
  region.params.validate();
  std::uint64_t state = 0x10752ULL;
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double t = region.h * splitmix64_next(state);
    const double center = initial_series(region.params, region.initial, t);
    const double y1 = center + region.K * (2.0 * splitmix64_next(state) - 1.0);
    const double y2 = center + region.K * (2.0 * splitmix64_next(state) - 1.0);
    if (std::abs(y1 - y2) < 1e-12) continue;
    best = std::max(best, std::abs(rhs(t, y1) - rhs(t, y2)) / std::abs(y1 - y2));
    // edge pair at the tube boundary
    const double f_hi = rhs(t, center + region.K), f_lo = rhs(t, center - region.K);
    best = std::max(best, std::abs(f_hi - f_lo) / (2.0 * region.K));
  }
  return best;
}

}  // namespace subfrac
