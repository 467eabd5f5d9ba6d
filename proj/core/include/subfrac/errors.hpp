#pragma once

#include <stdexcept>
#include <string>

namespace subfrac {

/// Thrown when an iterative scheme (series summation, Picard iteration,
/// corrector passes) exhausts its budget without meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace subfrac
