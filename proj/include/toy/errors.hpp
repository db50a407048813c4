#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toy {

enum class ErrorKind {
  DimensionMismatch,
  FieldMismatch,
  NotPrime,
  NotIsotropic,
  NotSymplectic,
  ImpossibleOutcome,
  CapExceeded,
  ContinuousNotEnumerable,
  NotPointMass,
  InvalidArgument,
  InvalidPartition,
  UnknownGate,
  ZeroVector,
  Overflow,
  MalformedCandidate,
  Schema,  // malformed input document
};

std::string_view to_string(ErrorKind kind);

// Every domain failure in the library surfaces as a toy::Error; the kind
// drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotIsotropic: return "NotIsotropic";
    case ErrorKind::NotSymplectic: return "NotSymplectic";
    case ErrorKind::ImpossibleOutcome: return "ImpossibleOutcome";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::ContinuousNotEnumerable: return "ContinuousNotEnumerable";
    case ErrorKind::NotPointMass: return "NotPointMass";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidPartition: return "InvalidPartition";
    case ErrorKind::UnknownGate: return "UnknownGate";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::MalformedCandidate: return "MalformedCandidate";
    case ErrorKind::Schema: return "Schema";
  }
  return "Error";
}

}  // namespace toy
