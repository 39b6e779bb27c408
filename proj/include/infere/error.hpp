#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace infere {

enum class ErrorKind : std::uint8_t {
  // regex text
  EmptyInput,
  UnbalancedParens,
  UnknownToken,
  UnknownCharClass,
  BadRepetitionBounds,
  UnknownOperator,
  ArityMismatch,
  MalformedInteger,
  // chains
  MalformedStep,
  ForwardReference,
  DuplicateIndex,
  NonConsecutiveIndices,
  DanglingStepRef,
  UnusedStep,
  // automata
  RepetitionTooLarge,
  LeafNotInAlphabet,
  // voting and evaluation
  NoValidCandidates,
  LineCountMismatch,
  UnparseableGold,
  MalformedRecord,
  DuplicateId,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::UnbalancedParens: return "UnbalancedParens";
    case ErrorKind::UnknownToken: return "UnknownToken";
    case ErrorKind::UnknownCharClass: return "UnknownCharClass";
    case ErrorKind::BadRepetitionBounds: return "BadRepetitionBounds";
    case ErrorKind::UnknownOperator: return "UnknownOperator";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::MalformedInteger: return "MalformedInteger";
    case ErrorKind::MalformedStep: return "MalformedStep";
    case ErrorKind::ForwardReference: return "ForwardReference";
    case ErrorKind::DuplicateIndex: return "DuplicateIndex";
    case ErrorKind::NonConsecutiveIndices: return "NonConsecutiveIndices";
    case ErrorKind::DanglingStepRef: return "DanglingStepRef";
    case ErrorKind::UnusedStep: return "UnusedStep";
    case ErrorKind::RepetitionTooLarge: return "RepetitionTooLarge";
    case ErrorKind::LeafNotInAlphabet: return "LeafNotInAlphabet";
    case ErrorKind::NoValidCandidates: return "NoValidCandidates";
    case ErrorKind::LineCountMismatch: return "LineCountMismatch";
    case ErrorKind::UnparseableGold: return "UnparseableGold";
    case ErrorKind::MalformedRecord: return "MalformedRecord";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an `Error` carrying a kind
/// that callers can dispatch on, plus a human-readable diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace infere
