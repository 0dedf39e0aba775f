#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eisen {

struct InvalidMatrix : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidTruncation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Argument outside the region where an operation is defined (y <= 0, Re s <= 1, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct OutOfDomain : std::domain_error {
  using std::domain_error::domain_error;
};

struct InsufficientCMax : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A q-expansion is too short for the requested height, or a quadrature failed to settle.
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what, std::size_t required_terms = 0)
      : std::runtime_error(what), required_terms_(required_terms) {}
  std::size_t required_terms() const noexcept { return required_terms_; }

 private:
  std::size_t required_terms_;
};

struct UnsupportedForm : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct MissingIndex : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct ConditioningError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedContinuation : std::domain_error {
  using std::domain_error::domain_error;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace eisen
