#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "subfrac/analysis.hpp"

using namespace subfrac;

namespace {

IvpProblem linear_problem(double alpha = 0.5) {
  IvpProblem pb;
  pb.params = OperatorParams{1.0, 0.5, alpha, 0.0};
  pb.rhs = [](double, double y) { return 0.9 * y; };
  pb.initial.b = {1.0};
  pb.K = 2.0;
  pb.h_star = 1.0;
  pb.L = 0.9;
  pb.M = 0.9 * 3.0;
  return pb;
}

SolverConfig fast_config(int n = 256) {
  SolverConfig cfg;
  cfg.n = n;
  cfg.allow_outside_existence = true;
  return cfg;
}

}  // namespace

TEST_CASE("nondecreasing gronwall bound") {
  OperatorParams p{1.0, 2.0, 0.7, 0.0};
  CHECK(gronwall_bound_nondecreasing(3.0, 0.0, p, 1.0) == doctest::Approx(3.0));

  // classical limit alpha = rho = 1, g = L: q e^{L t}
  OperatorParams classical{0.0, 1.0, 1.0, 0.0};
  CHECK(gronwall_bound_nondecreasing(1.0, 1.0, classical, 1.0) ==
        doctest::Approx(std::exp(1.0)).epsilon(1e-12));

  // the dependence-proof substitution g = rho^alpha L / Gamma(alpha) gives E_alpha(L t^{rho alpha})
  OperatorParams sub{1.0, 0.5, 0.5, 0.0};
  double L = 0.9, t = 0.8;
  double g = std::pow(sub.rho, sub.alpha) * L / oracles::gamma_ref(sub.alpha);
  double expect = mittag_leffler(sub.alpha, L * std::pow(t, sub.rho * sub.alpha));
  CHECK(gronwall_bound_nondecreasing(1.0, g, sub, t) == doctest::Approx(expect).epsilon(1e-12));

  CHECK_THROWS_AS(gronwall_bound_nondecreasing(-1.0, 0.5, p, 1.0), std::invalid_argument);
}

TEST_CASE("series bound agrees with the closed form at sigma 0") {
  OperatorParams p{0.0, 1.3, 0.55, 0.0};
  Grid grid(0.0, 1.0, 128, p.rho);
  GridFunction q = sample(grid, [](double) { return 0.7; });
  GronwallInput input{q, q, [](double) { return 0.9; }, p};
  bool warn = true;
  GridFunction series = gronwall_series_bound(input, 40, &warn);
  CHECK_FALSE(warn);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    double closed = gronwall_bound_nondecreasing(0.7, 0.9, p, grid.t(static_cast<int>(i)));
    CHECK(series.values[i] == doctest::Approx(closed).epsilon(1e-6));
  }
}

TEST_CASE("series bound with zero g returns q unchanged") {
  OperatorParams p{0.5, 1.0, 0.7, 0.0};
  Grid grid(0.0, 1.0, 32, p.rho);
  GridFunction q = sample(grid, [](double t) { return 1.0 + t; });
  GronwallInput input{q, q, [](double) { return 0.0; }, p};
  GridFunction out = gronwall_series_bound(input, 8);
  for (std::size_t i = 0; i < q.values.size(); ++i) CHECK(out.values[i] == q.values[i]);
}

TEST_CASE("series bound terms are positive and monotone in k_max") {
  OperatorParams p{0.8, 1.0, 0.6, 0.0};
  Grid grid(0.0, 1.0, 96, p.rho);
  GridFunction q = sample(grid, [](double t) { return 0.3 + 0.1 * t; });
  GronwallInput input{q, q, [](double t) { return 0.4 + 0.2 * t; }, p};
  GridFunction prev = gronwall_series_bound(input, 1);
  for (std::size_t i = 0; i < q.values.size(); ++i) CHECK(prev.values[i] >= q.values[i]);
  for (int k_max : {2, 4, 8}) {
    GridFunction next = gronwall_series_bound(input, k_max);
    for (std::size_t i = 0; i < q.values.size(); ++i) {
      CHECK(next.values[i] >= prev.values[i] - 1e-15);
    }
    prev = next;
  }
  // with sigma > 0 the series bound cannot exceed the exponential-free closed form
  for (std::size_t i = 0; i < q.values.size(); ++i) {
    double closed = gronwall_bound_nondecreasing(q.values[i], 0.6,  // g(1) is the sup of g
                                                 p, grid.t(static_cast<int>(i)));
    CHECK(prev.values[i] <= closed * (1.0 + 1e-9));
  }

  GronwallInput bad = input;
  bad.g = [](double t) { return 1.0 - t; };  // decreasing
  CHECK_THROWS_AS(gronwall_series_bound(bad, 4), std::invalid_argument);
}

TEST_CASE("initial-data dependence on the linear family") {
  IvpProblem pb = linear_problem();
  SolverConfig cfg = fast_config();

  SUBCASE("identical data gives zero deviation") {
    PerturbationReport rep = dependence_initial(pb, InitialData{{1.0}}, 1.0, cfg);
    CHECK(rep.epsilon == 0.0);
    CHECK(rep.sup_diff <= 1e-8);
    CHECK(rep.bound == 0.0);
  }

  SUBCASE("pairwise deviation matches the analytic factor") {
    // |psi_2 - psi_1| = 0.2 max_t e^{-sqrt t} E_{1/2}(0.9 t^{1/4}); the max on [0,1]
    // evaluates to 1.5000051 (erfc route)
    PerturbationReport rep = dependence_initial(pb, InitialData{{1.2}}, 1.0, cfg);
    CHECK(rep.epsilon == doctest::Approx(0.2));
    CHECK(rep.ratio == doctest::Approx(1.5000051).epsilon(2e-3));
    CHECK(rep.sup_diff <= rep.bound);
  }

  SUBCASE("ratio is constant in epsilon for the linear family") {
    double r1 = dependence_initial(pb, InitialData{{1.2}}, 1.0, cfg).ratio;
    double r2 = dependence_initial(pb, InitialData{{1.1}}, 1.0, cfg).ratio;
    double r3 = dependence_initial(pb, InitialData{{1.05}}, 1.0, cfg).ratio;
    CHECK(r1 / r2 == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r2 / r3 == doctest::Approx(1.0).epsilon(1e-6));
  }

  CHECK_THROWS_AS(dependence_initial(pb, InitialData{{1.0, 0.0}}, 1.0, cfg),
                  std::invalid_argument);
}

TEST_CASE("force dependence on the linear family") {
  IvpProblem pb = linear_problem();
  SolverConfig cfg = fast_config();

  SUBCASE("identical rhs gives zero deviation") {
    PerturbationReport rep = dependence_force(pb, pb.rhs, 1.0, cfg);
    CHECK(rep.epsilon == 0.0);
    CHECK(rep.sup_diff <= 1e-8);
  }

  SUBCASE("constant shift is dominated by its envelope") {
    const double c = 0.05;
    PerturbationReport rep =
        dependence_force(pb, [c](double, double y) { return 0.9 * y + c; }, 1.0, cfg);
    CHECK(rep.epsilon == doctest::Approx(c).epsilon(1e-12));
    CHECK(rep.sup_diff <= rep.bound);
    CHECK(rep.epsilon_tube.has_value());
    CHECK(*rep.epsilon_tube == doctest::Approx(c).epsilon(1e-12));
  }

  SUBCASE("scaled linear perturbation reports a bounded ratio") {
    PerturbationReport rep = dependence_force(
        pb, [](double, double y) { return (0.9 + 1e-3) * y; }, 1.0, cfg);
    CHECK(rep.sup_diff <= rep.bound);
    CHECK(rep.ratio > 0.0);
  }
}

TEST_CASE("order dependence") {
  IvpProblem pb = linear_problem();
  SolverConfig cfg = fast_config();

  SUBCASE("kernel difference zero and closed-form split") {
    CHECK(order_kernel_v0(0.5, 1.0) == doctest::Approx(1.0 / M_PI).epsilon(1e-12));
    // short interval: no split needed, antiderivative evaluated directly
    double small = order_kernel_integral(0.5, 0.7, 0.1);
    CHECK(small == doctest::Approx(std::pow(0.1, 0.5) / oracles::gamma_ref(1.5) -
                                   std::pow(0.1, 0.7) / oracles::gamma_ref(1.7))
                       .epsilon(1e-12));
    // split case cross-checked by direct quadrature of |difference|
    double alpha = 0.5, at = 0.7, W = 1.0;
    auto integrand = [&](double v) {
      return std::abs(std::pow(v, alpha - 1.0) / oracles::gamma_ref(alpha) -
                      std::pow(v, at - 1.0) / oracles::gamma_ref(at));
    };
    // transform z = v^alpha to absorb the singularity
    double ref = oracles::simpson(
        [&](double z) {
          double v = std::pow(z, 1.0 / alpha);
          return integrand(v) * std::pow(z, 1.0 / alpha - 1.0) / alpha;
        },
        1e-12, std::pow(W, alpha), 40000);
    CHECK(order_kernel_integral(alpha, at, W) == doctest::Approx(ref).epsilon(1e-5));
  }

  SUBCASE("equal orders give a zero report") {
    PerturbationReport rep = dependence_order(pb, 0.5, InitialData{}, 1.0, cfg);
    CHECK(rep.epsilon == 0.0);
    CHECK(rep.epsilon_tilde == 0.0);
    CHECK(rep.sup_diff == 0.0);
    CHECK(rep.bound == 0.0);
  }

  SUBCASE("same-ceiling perturbation is dominated and stable") {
    PerturbationReport rep = dependence_order(pb, 0.6, InitialData{}, 1.0, cfg);
    CHECK(rep.epsilon == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(rep.epsilon_tilde == 0.0);
    CHECK(rep.sup_diff <= rep.bound);
    CHECK(rep.v0.has_value());
    CHECK(rep.kernel_integral.has_value());
  }

  SUBCASE("ratio stays finite and stable as epsilon shrinks") {
    double prev = 0.0;
    for (double eps : {0.1, 0.05, 0.025}) {
      PerturbationReport rep = dependence_order(pb, 0.5 + eps, InitialData{}, 1.0, cfg);
      CHECK(rep.ratio > 0.0);
      CHECK(std::isfinite(rep.ratio));
      if (prev > 0.0) {
        double pair = prev / rep.ratio;
        CHECK(pair > 0.85);
        CHECK(pair < 1.15);
      }
      prev = rep.ratio;
    }
  }

  SUBCASE("ceiling jump requires and uses the extra data") {
    CHECK_THROWS_AS(dependence_order(pb, 1.2, InitialData{}, 1.0, cfg), std::invalid_argument);
    PerturbationReport rep = dependence_order(pb, 1.2, InitialData{{0.05}}, 1.0, cfg);
    CHECK(rep.epsilon == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(rep.epsilon_tilde == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(rep.sup_diff <= rep.bound);
  }
}

TEST_CASE("report serialization carries the contract fields") {
  PerturbationReport rep;
  rep.epsilon = 0.25;
  rep.epsilon_tilde = 0.0;
  rep.sup_diff = 0.375;
  rep.bound = 1.5;
  rep.ratio = 1.5;
  rep.n = 128;
  rep.h = 1.0;
  rep.method = SolveMethod::picard;
  std::string j = to_json(rep);
  for (const char* key : {"\"epsilon\"", "\"epsilon_tilde\"", "\"sup_diff\"", "\"bound\"",
                          "\"ratio\"", "\"n\"", "\"h\"", "\"method\""})
    CHECK(j.find(key) != std::string::npos);
  CHECK(j.find("\"v0\"") == std::string::npos);

  rep.v0 = 0.21;
  rep.kernel_integral = 0.13;
  std::string j2 = to_json(rep);
  CHECK(j2.find("\"v0\"") != std::string::npos);
  CHECK(j2.find("\"kernel_integral\"") != std::string::npos);
}
