#pragma once

#include <stdexcept>
#include <string>

namespace vqsp {

/// Requested size exceeds what the dense simulator supports.
class CapacityError : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// Qubit index out of range, duplicated, or otherwise malformed.
class IndexError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// Argument violates a documented precondition.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A computation produced non-finite values or failed to converge.
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Calibration matrix is singular or too ill-conditioned to invert.
class MitigationError : public NumericError {
  public:
    MitigationError(const std::string &what, double condition_number)
        : NumericError(what), condition_number_(condition_number) {}

    [[nodiscard]] double condition_number() const noexcept { return condition_number_; }

  private:
    double condition_number_;
};

/// Operation is not defined for the requested evaluation mode.
class UnsupportedModeError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace vqsp
