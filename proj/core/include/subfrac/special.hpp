#pragma once

#include "subfrac/errors.hpp"

namespace subfrac {

/// Truncation control for the Mittag-Leffler power series.
struct MlSeriesConfig {
  double rel_tol = 1e-14;
  int max_terms = 250;

  void validate() const;  // rel_tol in (0,1), max_terms >= 1
};

/// Gamma function via a Lanczos approximation (reflection for x < 0.5).
/// Relative error below 1e-13 on [0.1, 50].
/// Throws std::domain_error at the poles (x = 0, -1, -2, ...) and
/// std::overflow_error when the value exceeds double range.
double gamma_fn(double x);

/// log(Gamma(x)) for x > 0.
double log_gamma(double x);

/// Gamma(x) / Gamma(x + d) for x > 0, x + d > 0, evaluated with the
/// exponent grouped so no intermediate over/underflows for moderate d.
double gamma_ratio(double x, double d);

/// 1 / Gamma(x), total on the reals: exactly 0 at x = 0, -1, -2, ...
double reciprocal_gamma(double x) noexcept;

struct MlEvaluation {
  double value;
  int terms_used;   // truncation index K (0 when z == 0)
  double last_term; // the term at K
};

/// One-parameter Mittag-Leffler function E_alpha(z) = sum z^k / Gamma(k*alpha + 1),
/// summed directly with compensated addition. Intended domain: alpha in (0, 2],
/// z in [-5, 30] with E_alpha(z) representable in double precision; small alpha
/// combined with large z needs max_terms above the default (the factorial decay
/// sets in around k ~ e^{ln(z)/alpha} / alpha).
/// Stops at the first K with |term_K| <= rel_tol * |partial sum|; throws
/// ConvergenceError if max_terms is reached with the term still above tolerance.
MlEvaluation mittag_leffler_eval(double alpha, double z, const MlSeriesConfig& cfg = {});

double mittag_leffler(double alpha, double z, const MlSeriesConfig& cfg = {});

}  // namespace subfrac
