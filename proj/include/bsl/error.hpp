#pragma once

#include <stdexcept>
#include <string>

namespace bsl {

enum class ErrorKind {
  Parse,             // bad text input
  Domain,            // precondition violated (wrong subgroup, not in H, ...)
  Limit,             // enumeration cap exceeded
  InvalidGenerator,  // sigma outside the subgroup a generator signature demands
  InvalidPath,       // path index outside the allowed index set
  SideMismatch,      // portrait sides incompatible
  MissingCoset,      // transversal requested for a non-transitive group
  OracleContract,    // base oracle returned an inconsistent decomposition
  BrittonPinch,      // tau-conjugation applied outside its domain
  Classification,    // elliptic/hyperbolic precondition violated
  PartialResult,     // bounded computation could not determine the answer
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Limit: return "enumeration-limit";
    case ErrorKind::InvalidGenerator: return "invalid-generator";
    case ErrorKind::InvalidPath: return "invalid-path";
    case ErrorKind::SideMismatch: return "side-mismatch";
    case ErrorKind::MissingCoset: return "missing-coset";
    case ErrorKind::OracleContract: return "oracle-contract";
    case ErrorKind::BrittonPinch: return "britton-pinch";
    case ErrorKind::Classification: return "classification";
    case ErrorKind::PartialResult: return "partial-result";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace bsl
