#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gradalg {

enum class ErrorKind {
  TableInvalid,
  SpecMalformed,
  NotASubgroup,
  OrderCapExceeded,
  DivisionByZero,
  FieldMismatch,
  NotACocycle,
  DomainMismatch,
  AlgebraMismatch,
  NotHomogeneous,
  ZeroElement,
  IndexOutOfRange,
  LengthMismatch,
  InvalidWitness,
  HypothesisViolated,
  AmbientMismatch,
  ChainNotCentral,
  ExtensionFailed,
  DegreeMismatch,
  DegreeCapExceeded,
  ParseError,
  ValidationError,
  UsageError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gradalg
