#pragma once

#include <stdexcept>
#include <string>

namespace dqc {

enum class ErrorKind {
  NonUnitary,
  DimensionMismatch,
  WireOutOfRange,
  ParseError,
  NonUnitaryGate,
  OverlappingGates,
  UnknownQubit,
  InvalidPartition,
  UnsupportedGate,
  TooLarge,
  UncoveredNode,
  TooLargeForExact,
  InfeasibleLimits,
  NonTracePreserving,
  InvalidPlan,
};

const char *error_kind_name(ErrorKind kind);

class DqcError : public std::runtime_error {
 public:
  DqcError(ErrorKind kind, const std::string &msg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dqc
