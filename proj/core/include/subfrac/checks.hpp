#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace subfrac {

struct CheckResult {
  std::string group;
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Names accepted by the `only` filter of run_checks.
const std::vector<std::string>& check_group_names();

/// Runs the invariant suite: semigroup, conjugation, reconstruction,
/// contraction, gronwall, supnorm, linearity. `only` restricts to the named
/// groups (empty = all); tolerances are multiplied by tolerance_scale.
/// Draws are deterministic for a given seed.
std::vector<CheckResult> run_checks(const std::vector<std::string>& only = {},
                                    double tolerance_scale = 1.0,
                                    std::uint64_t seed = 0x5eedf00dULL);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace subfrac
