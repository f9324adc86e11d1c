#pragma once

#include <stdexcept>
#include <string>

namespace acbm {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct AsymmetricMetric : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegenerateMetric : std::domain_error {
  using std::domain_error::domain_error;
};

struct DegeneratePlane : std::domain_error {
  using std::domain_error::domain_error;
};

/// The input does not define a Lie algebra (antisymmetry or Jacobi fails).
struct InvalidModel : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Two computation routes that must agree did not. Always an
/// implementation or model bug, never a user error.
struct CrossCheckMismatch : std::logic_error {
  using std::logic_error::logic_error;
};

/// A tensor identity that holds for every valid input was violated.
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

struct StructureInvalid : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownModel : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct GenerationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace acbm
