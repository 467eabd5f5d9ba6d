#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "subfrac/core.hpp"

using namespace subfrac;

TEST_CASE("operator params validation") {
  CHECK_THROWS_AS((OperatorParams{0.0, -1.0, 0.5, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((OperatorParams{0.0, 1.0, 0.0, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((OperatorParams{0.0, 1.0, 0.5, -0.1}.validate()), std::invalid_argument);
  CHECK((OperatorParams{0.0, 1.0, 0.5, 0.0}.integer_order()) == 1);
  CHECK((OperatorParams{0.0, 1.0, 1.0, 0.0}.integer_order()) == 1);
  CHECK((OperatorParams{0.0, 1.0, 1.5, 0.0}.integer_order()) == 2);
  CHECK((OperatorParams{0.0, 1.0, 2.0, 0.0}.integer_order()) == 2);
}

TEST_CASE("u transform round trips") {
  OperatorParams p{0.0, 2.0, 0.5, 0.0};
  CHECK(to_u(1.0, p) == doctest::Approx(1.0));
  OperatorParams half{0.0, 0.5, 0.5, 0.0};
  CHECK(to_u(2.0, half) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(to_u(-1.0, p), std::domain_error);
  CHECK_THROWS_AS(from_u(-0.5, p), std::domain_error);

  oracles::Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    OperatorParams q{0.0, rng.in(0.2, 4.0), 1.0, 0.0};
    double x = rng.in(1e-3, 10.0);
    CHECK(from_u(to_u(x, q), q) == doctest::Approx(x).epsilon(1e-14));
  }
}

TEST_CASE("grid nodes are uniform in u and increasing in t") {
  oracles::Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    double a = trial % 2 ? 0.0 : rng.in(0.0, 0.5);
    double t_end = a + rng.in(0.1, 3.0);
    double rho = rng.in(0.3, 3.0);
    int n = 2 + static_cast<int>(rng.in(0.0, 60.0));
    Grid grid(a, t_end, n, rho);
    CHECK(grid.u(0) == doctest::Approx(std::pow(a, rho)).epsilon(1e-13));
    CHECK(grid.u(n) == doctest::Approx(std::pow(t_end, rho)).epsilon(1e-12));
    double du = grid.u(1) - grid.u(0);
    for (int i = 0; i + 1 <= n; ++i) {
      CHECK(grid.u(i + 1) - grid.u(i) == doctest::Approx(du).epsilon(1e-12));
      CHECK(grid.t(i + 1) > grid.t(i));
    }
    CHECK(grid.t(0) == a);
    CHECK(grid.t(n) == t_end);
  }
  CHECK_THROWS_AS((Grid{1.0, 0.5, 8, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS((Grid{0.0, 1.0, 0, 1.0}), std::invalid_argument);
}

TEST_CASE("conjugation pairs invert and reduce to identity at sigma 0") {
  OperatorParams p{1.3, 1.5, 0.5, 0.0};
  Grid grid(0.0, 2.0, 64, p.rho);
  GridFunction f = sample(grid, [](double t) { return std::sin(3.0 * t) + 2.0; });

  GridFunction back = conjugate(conjugate(f, +1, p), -1, p);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    CHECK(back.values[i] == doctest::Approx(f.values[i]).epsilon(1e-13));

  OperatorParams zero{0.0, 1.5, 0.5, 0.0};
  GridFunction same = conjugate(f, +1, zero);
  for (std::size_t i = 0; i < f.values.size(); ++i) CHECK(same.values[i] == f.values[i]);

  OperatorParams unit{1.0, 2.0, 0.5, 0.0};
  Grid g1(0.0, 1.0, 4, 2.0);
  GridFunction ones = sample(g1, [](double) { return 1.0; });
  GridFunction damped = conjugate(ones, -1, unit);
  CHECK(damped.values.back() == doctest::Approx(0.36787944117).epsilon(1e-10));

  CHECK_THROWS_AS(conjugate(f, 2, p), std::invalid_argument);
  OperatorParams huge{800.0, 1.5, 0.5, 0.0};
  CHECK_THROWS_AS(conjugate(f, +1, huge), std::overflow_error);
}

TEST_CASE("power-exp family evaluation") {
  OperatorParams p{0.0, 1.0, 0.5, 0.0};
  PowerExpSpec constant{0.0, p};
  for (double t : {0.0, 0.5, 2.0}) CHECK(power_exp_eval(constant, t) == 1.0);

  OperatorParams pe{1.0, 2.0, 0.5, 0.0};
  CHECK(power_exp_eval(PowerExpSpec{2.0, pe}, 1.0) == doctest::Approx(0.36787944117).epsilon(1e-10));

  OperatorParams lin{0.0, 1.0, 0.5, 0.0};
  CHECK(power_exp_eval(PowerExpSpec{1.0, lin}, 3.0) == doctest::Approx(3.0).epsilon(1e-14));

  OperatorParams shifted{0.0, 1.0, 0.5, 1.0};
  CHECK_THROWS_AS(power_exp_eval(PowerExpSpec{0.5, shifted}, 0.5), std::domain_error);
  CHECK_THROWS_AS((PowerExpSpec{-1.0, lin}.validate()), std::invalid_argument);

  // beta < 0 is unbounded at a: sampling must reject the grid endpoint
  Grid grid(0.0, 1.0, 8, 1.0);
  CHECK_THROWS_AS(sample_power_exp(PowerExpSpec{-0.5, lin}, grid), std::invalid_argument);
}
