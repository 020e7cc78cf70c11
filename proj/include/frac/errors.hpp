#pragma once

#include <stdexcept>
#include <string>

namespace frac {

/// A hypothesis of an estimate or solver does not hold for the given input.
/// The CLI maps this to exit code 2.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Data leaks out of the central half-box, so the periodic box no longer
/// emulates the whole space.
class ContaminationError : public PreconditionError {
 public:
  ContaminationError(const std::string& what, double fraction)
      : PreconditionError(what), fraction_(fraction) {}
  double fraction() const { return fraction_; }

 private:
  double fraction_;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace frac
