#include "subfrac/special.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace subfrac {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtTwoPi = 2.50662827463100050242;

// Lanczos approximation, g = 607/128 with 15 coefficients (Godfrey's set).
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczosCoef[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    3.3994649984811888699e-5,
    4.6523628927048575665e-5,
    -9.8374475304879564677e-5,
    1.5808870322491248884e-4,
    -2.1026444172410488319e-4,
    2.1743961811521264320e-4,
    -1.6431810653676389022e-4,
    8.4418223983852743293e-5,
    -2.6190838401581408670e-5,
    3.6899182659531622704e-6,
};

double lanczos_sum(double x) {
  // x >= 0.5; series in 1/(x - 1 + k)
  double s = kLanczosCoef[0];
  for (int k = 1; k < 15; ++k) s += kLanczosCoef[k] / (x - 1.0 + k);
  return s;
}

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

// sin(pi x) with exact zeros at the integers.
double sin_pi(double x) {
  double n = std::round(x);
  double r = x - n;
  if (r == 0.0) return 0.0;
  double s = std::sin(kPi * r);
  return (std::fmod(std::abs(n), 2.0) == 1.0) ? -s : s;
}

double gamma_positive(double x) {
  // x >= 0.5
  double base = x + kLanczosG - 0.5;
  return kSqrtTwoPi * std::pow(base, x - 0.5) * std::exp(-base) * lanczos_sum(x);
}

double gamma_impl(double x) {
  if (x >= 0.5) return gamma_positive(x);
  // reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
  double s = sin_pi(x);
  if (s == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return kPi / (s * gamma_positive(1.0 - x));
}

void kahan_add(double& sum, double& comp, double term) {
  double y = term - comp;
  double t = sum + y;
  comp = (t - sum) - y;
  sum = t;
}

}  // namespace

void MlSeriesConfig::validate() const {
  if (!(rel_tol > 0.0) || !(rel_tol < 1.0))
    throw std::invalid_argument("MlSeriesConfig: rel_tol must lie in (0, 1)");
  if (max_terms < 1) throw std::invalid_argument("MlSeriesConfig: max_terms must be >= 1");
}

double gamma_fn(double x) {
  if (!std::isfinite(x)) throw std::domain_error("gamma_fn: argument must be finite");
  if (is_nonpositive_integer(x)) {
    std::ostringstream os;
    os << "gamma_fn: pole at x = " << x;
    throw std::domain_error(os.str());
  }
  double g = gamma_impl(x);
  if (!std::isfinite(g)) throw std::overflow_error("gamma_fn: value not representable");
  return g;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
  if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
  double base = x + kLanczosG - 0.5;
  return 0.5 * std::log(2.0 * kPi) + (x - 0.5) * std::log(base) - base +
         std::log(lanczos_sum(x));
}

double gamma_ratio(double x, double d) {
  if (!(x > 0.0) || !(x + d > 0.0))
    throw std::domain_error("gamma_ratio: both arguments must be positive");
  double ta = x + kLanczosG - 0.5;
  double tb = ta + d;
  // log of (ta^(x-0.5) e^(-ta)) / (tb^(x+d-0.5) e^(-tb)) with grouped exponent
  double lr = (x - 0.5) * std::log1p(-d / tb) - d * std::log(tb) + d;
  return std::exp(lr) * (lanczos_sum(x) / lanczos_sum(x + d));
}

double reciprocal_gamma(double x) noexcept {
  if (is_nonpositive_integer(x)) return 0.0;
  if (x >= 0.5) {
    double g = gamma_positive(x);
    if (std::isinf(g)) return 0.0;
    return 1.0 / g;
  }
  // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi; overflows to +-inf for very
  // negative non-integer x, which is the mathematical behaviour.
  return sin_pi(x) * gamma_positive(1.0 - x) / kPi;
}

MlEvaluation mittag_leffler_eval(double alpha, double z, const MlSeriesConfig& cfg) {
  cfg.validate();
  if (!(alpha > 0.0)) throw std::domain_error("mittag_leffler: alpha must be positive");
  if (!std::isfinite(z)) throw std::domain_error("mittag_leffler: z must be finite");
  if (z == 0.0) return {1.0, 0, 0.0};

  double sum = 1.0, comp = 0.0;  // k = 0 term
  double term = 1.0;
  for (int k = 1; k <= cfg.max_terms; ++k) {
    term *= z * gamma_ratio(alpha * (k - 1) + 1.0, alpha);
    kahan_add(sum, comp, term);
    if (!std::isfinite(term) || !std::isfinite(sum))
      throw std::overflow_error("mittag_leffler: value not representable");
    if (std::abs(term) <= cfg.rel_tol * std::abs(sum)) return {sum, k, term};
  }
  std::ostringstream os;
  os << "mittag_leffler: no convergence after " << cfg.max_terms
     << " terms (alpha = " << alpha << ", z = " << z << ", last term = " << term << ")";
  throw ConvergenceError(os.str());
}

double mittag_leffler(double alpha, double z, const MlSeriesConfig& cfg) {
  return mittag_leffler_eval(alpha, z, cfg).value;
}

}  // namespace subfrac
