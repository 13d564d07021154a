#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace enas {

/// Raised when an argument falls outside the domain an operation accepts
/// (M < 2, malformed genotype, invalid variant combination, ...).
class ParameterError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// The brute-force oracle refuses instances whose enumeration would not
/// finish at desk scale.
class InstanceTooLarge : public ParameterError {
  public:
    InstanceTooLarge(const std::string& what, double estimated_size)
        : ParameterError(what), estimated_size_(estimated_size) {}

    double estimated_size() const noexcept { return estimated_size_; }

  private:
    double estimated_size_;
};

class OutsideCircleError : public ParameterError {
  public:
    using ParameterError::ParameterError;
};

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace enas
