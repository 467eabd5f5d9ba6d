#include "subfrac/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "subfrac/analysis.hpp"
#include "subfrac/operators.hpp"
#include "subfrac/special.hpp"
#include "subfrac/volterra.hpp"

namespace subfrac {

namespace {

struct SplitMix {
  std::uint64_t state;
  explicit SplitMix(std::uint64_t seed) : state(seed) {}
  double uniform() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z = z ^ (z >> 31);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }
  double in(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

// Direct quadrature of the defining integral, independent of the conjugated
// u-domain route: substitute v = t^rho - s^rho, then z = v^alpha when the
// kernel is singular, and integrate with composite Simpson.
double direct_integral_oracle(const PowerExpSpec& spec, double alpha, double t, int panels) {
  const double rho = spec.params.rho;
  const double sigma = spec.params.sigma;
  const double U = std::pow(t, rho);
  const double ua = std::pow(spec.params.a, rho);
  const double W = U - ua;
  auto F = [&](double v) {
    double s = std::pow(std::max(U - v, ua), 1.0 / rho);
    return std::exp(-sigma * v) * power_exp_eval(spec, s);
  };
  auto simpson = [&](auto&& fn, double lo, double hi, int np) {
    double hstep = (hi - lo) / np;
    double acc = fn(lo) + fn(hi);
    for (int i = 1; i < np; ++i) acc += fn(lo + i * hstep) * (i % 2 ? 4.0 : 2.0);
    return acc * hstep / 3.0;
  };
  if (alpha >= 1.0) {
    auto integrand = [&](double v) { return std::pow(v, alpha - 1.0) * F(v); };
    return simpson(integrand, 0.0, W, panels) / gamma_fn(alpha);
  }
  auto integrand = [&](double z) { return F(std::pow(z, 1.0 / alpha)); };
  return simpson(integrand, 0.0, std::pow(W, alpha), panels) / gamma_fn(alpha + 1.0);
}

struct Suite {
  std::vector<CheckResult> results;
  double scale;
  SplitMix rng;

  Suite(double tolerance_scale, std::uint64_t seed) : scale(tolerance_scale), rng(seed) {}

  void add(const std::string& group, const std::string& name, double measured, double tolerance) {
    results.push_back({group, name, measured, tolerance, measured <= tolerance});
  }
};

GridFunction random_smooth(Suite& s, const Grid& grid) {
  const double c0 = s.rng.in(-1.0, 1.0);
  const double c1 = s.rng.in(-1.0, 1.0);
  const double c2 = s.rng.in(0.5, 6.0);
  const double c3 = s.rng.in(0.0, 6.28);
  const double c4 = s.rng.in(-1.0, 1.0);
  GridFunction f{grid, std::vector<double>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double u = grid.u(static_cast<int>(i));
    f.values[i] = c0 + c1 * std::sin(c2 * u + c3) + c4 * u * u;
  }
  return f;
}

void check_semigroup(Suite& s) {
  const int n = 512;
  for (int draw = 0; draw < 10; ++draw) {
    OperatorParams params{draw % 2 ? 1.0 : 0.0, (draw % 3 == 0) ? 0.5 : (draw % 3 == 1 ? 1.0 : 2.0),
                          0.0, 0.0};
    const double alpha = s.rng.in(0.2, 1.5);
    const double beta = s.rng.in(0.2, 1.5);
    const double beta_pow = s.rng.in(0.0, 3.0);
    Grid grid(0.0, 1.0, n, params.rho);
    PowerExpSpec spec{beta_pow, params.with_alpha(1.0)};
    GridFunction f = sample_power_exp(spec, grid);

    GridFunction inner = substantial_integral(params.with_alpha(beta), f);
    GridFunction lhs = substantial_integral(params.with_alpha(alpha), inner);
    GridFunction rhs = substantial_integral(params.with_alpha(alpha + beta), f);
    double diff = 0.0;
    for (std::size_t i = 0; i < lhs.values.size(); ++i)
      diff = std::max(diff, std::abs(lhs.values[i] - rhs.values[i]));
    std::ostringstream name;
    name << "draw " << draw << " (alpha=" << alpha << ", beta=" << beta << ", pow=" << beta_pow
         << ")";
    s.add("semigroup", name.str(), diff, 5e-3 * f.sup_norm() * s.scale);
  }
}

void check_conjugation(Suite& s) {
  struct Case {
    double sigma, rho, alpha, beta;
  } cases[] = {{1.0, 2.0, 0.5, 2.0}, {0.5, 0.7, 0.8, 1.3}, {2.0, 1.0, 0.35, 0.7}};
  const int n = 512;
  for (const auto& c : cases) {
    OperatorParams params{c.sigma, c.rho, c.alpha, 0.0};
    PowerExpSpec spec{c.beta, params};
    Grid grid(0.0, 1.0, n, c.rho);
    GridFunction numeric = substantial_integral(params, sample_power_exp(spec, grid));
    double reference = direct_integral_oracle(spec, c.alpha, 1.0, 20000);
    std::ostringstream name;
    name << "sigma=" << c.sigma << ", rho=" << c.rho << ", alpha=" << c.alpha;
    s.add("conjugation", name.str(), std::abs(numeric.values.back() - reference),
          1e-3 * s.scale);
  }
}

void check_reconstruction(Suite& s) {
  const int n = 512;
  int combo = 0;
  for (double alpha : {0.3, 0.5, 0.9}) {
    for (double beta : {1.0, 2.0, 3.0}) {
      const double rho = (combo % 3 == 0) ? 0.5 : (combo % 3 == 1 ? 1.0 : 2.0);
      ++combo;
      OperatorParams params{1.0, rho, alpha, 0.0};
      PowerExpSpec spec{beta, params};
      Grid grid(0.0, 1.0, n, rho);
      GridFunction f = sample_power_exp(spec, grid);
      InitialData data = power_exp_initial_data(spec, params.integer_order());
      GridFunction rec = caputo_taylor_reconstruct(params, f, data);
      double diff = 0.0;
      for (std::size_t i = 0; i < f.values.size(); ++i)
        diff = std::max(diff, std::abs(rec.values[i] - f.values[i]));
      std::ostringstream name;
      name << "caputo alpha=" << alpha << ", beta=" << beta << ", rho=" << rho;
      s.add("reconstruction", name.str(), diff, 1e-2 * f.sup_norm() * s.scale);
    }
  }
  for (double alpha : {0.3, 0.7}) {
    for (double beta : {1.0, 2.0}) {
      OperatorParams params{1.0, 1.0, alpha, 0.0};
      PowerExpSpec spec{beta, params};
      Grid grid(0.0, 1.0, n, 1.0);
      GridFunction f = sample_power_exp(spec, grid);
      GridFunction rem = rl_inversion_remainder(params, f);
      double diff = 0.0;
      for (std::size_t i = 0; i < f.values.size(); ++i)
        diff = std::max(diff, std::abs(rem.values[i] - f.values[i]));
      std::ostringstream name;
      name << "rl alpha=" << alpha << ", beta=" << beta;
      s.add("reconstruction", name.str(), diff, 1e-2 * f.sup_norm() * s.scale);
    }
  }
}

void check_contraction(Suite& s) {
  for (int draw = 0; draw < 5; ++draw) {
    const double alpha = s.rng.in(0.3, 1.2);
    const double rho = s.rng.in(0.6, 2.0);
    const double L = s.rng.in(0.3, 1.5);
    const double sigma = s.rng.in(0.0, 1.0);
    IvpProblem pb;
    pb.params = OperatorParams{sigma, rho, alpha, 0.0};
    const double lambda = L;
    pb.rhs = [lambda](double, double y) { return lambda * y; };
    pb.initial.b.assign(static_cast<std::size_t>(pb.params.integer_order()), 0.0);
    pb.initial.b[0] = 1.0;
    pb.K = 1.0;
    pb.h_star = 10.0;
    pb.L = L;
    pb.M = L * 2.0;  // |lambda y| <= L (sup|init| + K)
    const double h = 0.95 * existence_h_sup(pb);
    SolverConfig cfg;
    cfg.n = 256;
    Solution sol = solve_picard(pb, h, cfg);
    const double bound =
        L * std::pow(h, rho * alpha) / gamma_fn(alpha + 1.0) + 10.0 * sol.error_estimate;
    std::ostringstream name;
    name << "draw " << draw << " (L=" << L << ", h=" << h << ", alpha=" << alpha
         << ", rho=" << rho << ")";
    s.add("contraction", name.str(), sol.contraction_estimate, bound * s.scale);
  }
}

void check_gronwall(Suite& s) {
  // dependence experiments on the linear family; the rhs is globally
  // Lipschitz so the envelope applies on the whole requested interval
  IvpProblem pb;
  pb.params = OperatorParams{1.0, 0.5, 0.5, 0.0};
  pb.rhs = [](double, double y) { return 0.9 * y; };
  pb.initial.b = {1.0};
  pb.K = 2.0;
  pb.h_star = 1.0;
  pb.L = 0.9;
  pb.M = 0.9 * 3.0;
  SolverConfig cfg;
  cfg.n = 256;
  cfg.allow_outside_existence = true;
  const double h = 1.0;

  for (double eps : {0.2, 0.1, 0.05}) {
    PerturbationReport rep = dependence_initial(pb, InitialData{{1.0 + eps}}, h, cfg);
    std::ostringstream name;
    name << "initial dominance eps=" << eps;
    s.add("gronwall", name.str(), rep.sup_diff, rep.bound * s.scale);

    RhsFn shifted = [eps](double, double y) { return 0.9 * y + eps; };
    PerturbationReport repf = dependence_force(pb, shifted, h, cfg);
    std::ostringstream namef;
    namef << "force dominance eps=" << eps;
    s.add("gronwall", namef.str(), repf.sup_diff, repf.bound * s.scale);

    PerturbationReport repo = dependence_order(pb, pb.params.alpha + eps, InitialData{}, h, cfg);
    std::ostringstream nameo;
    nameo << "order dominance eps=" << eps;
    s.add("gronwall", nameo.str(), repo.sup_diff, repo.bound * s.scale);
  }

  // series bound vs closed form (sigma = 0: the non-decreasing-q reduction is exact)
  OperatorParams params{0.0, 1.0, 0.6, 0.0};
  Grid grid(0.0, 1.0, 128, 1.0);
  GridFunction q = sample(grid, [](double) { return 0.7; });
  GronwallInput input{q, q, [](double) { return 0.9; }, params};
  bool warn = false;
  GridFunction series = gronwall_series_bound(input, 40, &warn);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double closed = gronwall_bound_nondecreasing(0.7, 0.9, params, grid.t(static_cast<int>(i)));
    worst = std::max(worst, std::abs(series.values[i] - closed) / closed);
  }
  s.add("gronwall", "series matches closed form (sigma=0)", worst, 1e-6 * s.scale);
  s.add("gronwall", "series converged within k_max", warn ? 1.0 : 0.0, 0.5 * s.scale);
}

void check_supnorm(Suite& s) {
  for (int draw = 0; draw < 20; ++draw) {
    const double sigma = s.rng.in(0.0, 2.0);
    const double rho = s.rng.in(0.5, 2.0);
    const double alpha = s.rng.in(0.25, 1.5);
    OperatorParams params{sigma, rho, alpha, 0.0};
    Grid grid(0.0, 1.0, 256, rho);
    GridFunction f = random_smooth(s, grid);
    GridFunction g = random_smooth(s, grid);
    GridFunction d{grid, std::vector<double>(grid.size())};
    for (std::size_t i = 0; i < grid.size(); ++i) d.values[i] = f.values[i] - g.values[i];
    GridFunction integral = substantial_integral(params, d);
    const double rhs_bound =
        std::pow(1.0, rho * alpha) / gamma_fn(alpha + 1.0) * d.sup_norm();
    std::ostringstream name;
    name << "pair " << draw;
    s.add("supnorm", name.str(), integral.sup_norm(), rhs_bound * (1.0 + 1e-9) * s.scale);
  }
}

void check_linearity(Suite& s) {
  for (int draw = 0; draw < 5; ++draw) {
    const double rho = s.rng.in(0.5, 2.0);
    const double alpha = s.rng.in(0.3, 1.4);
    OperatorParams params{s.rng.in(0.0, 1.5), rho, alpha, 0.0};
    Grid grid(0.0, 1.0, 128, rho);
    GridFunction f = random_smooth(s, grid);
    GridFunction g = random_smooth(s, grid);
    const double c1 = s.rng.in(-3.0, 3.0);
    const double c2 = s.rng.in(-3.0, 3.0);
    GridFunction mix{grid, std::vector<double>(grid.size())};
    for (std::size_t i = 0; i < grid.size(); ++i)
      mix.values[i] = c1 * f.values[i] + c2 * g.values[i];
    GridFunction lhs = substantial_integral(params, mix);
    GridFunction fa = substantial_integral(params, f);
    GridFunction gb = substantial_integral(params, g);
    double diff = 0.0;
    for (std::size_t i = 0; i < lhs.values.size(); ++i)
      diff = std::max(diff,
                      std::abs(lhs.values[i] - (c1 * fa.values[i] + c2 * gb.values[i])));
    const double tol =
        1e-12 * (std::abs(c1) * fa.sup_norm() + std::abs(c2) * gb.sup_norm() + 1.0);
    std::ostringstream name;
    name << "draw " << draw;
    s.add("linearity", name.str(), diff, tol * s.scale);
  }
}

}  // namespace

const std::vector<std::string>& check_group_names() {
  static const std::vector<std::string> names = {
      "semigroup", "conjugation", "reconstruction", "contraction",
      "gronwall",  "supnorm",     "linearity"};
  return names;
}

std::vector<CheckResult> run_checks(const std::vector<std::string>& only, double tolerance_scale,
                                    std::uint64_t seed) {
  auto wanted = [&](const std::string& group) {
    if (only.empty()) return true;
    return std::find(only.begin(), only.end(), group) != only.end();
  };
  for (const auto& name : only)
    if (std::find(check_group_names().begin(), check_group_names().end(), name) ==
        check_group_names().end())
      throw std::invalid_argument("unknown check group: " + name);

  Suite s(tolerance_scale, seed);
  if (wanted("semigroup")) check_semigroup(s);
  if (wanted("conjugation")) check_conjugation(s);
  if (wanted("reconstruction")) check_reconstruction(s);
  if (wanted("contraction")) check_contraction(s);
  if (wanted("gronwall")) check_gronwall(s);
  if (wanted("supnorm")) check_supnorm(s);
  if (wanted("linearity")) check_linearity(s);
  return s.results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace subfrac
