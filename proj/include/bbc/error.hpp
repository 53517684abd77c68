#ifndef BBC_ERROR_HPP
#define BBC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace bbc {

/// Failure categories raised by the library. The CLI maps these onto exit codes.
enum class ErrorCode {
  VertexOutOfRange,
  SelfLoop,
  DuplicateEdge,
  CycleDetected,
  NotATree,
  ParseError,
  KOutOfRange,
  InstanceTooLarge,
  NotFibonacciTree,
  InvalidDecomposition,
  PreconditionViolated,
  NotIndependent,
  LambdaTooSmall,
  DegreeTooSmall,
  KTooSmall,
  OrderOutOfRange,
  NotAFibTreeSize,
  AdjacentOnes,
  SearchSpaceTooLarge,
  HypothesisViolated,
  InfeasibleDegreeBound,
  VerificationFailed,
  InvalidArgument,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::NotFibonacciTree: return "NotFibonacciTree";
    case ErrorCode::InvalidDecomposition: return "InvalidDecomposition";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NotIndependent: return "NotIndependent";
    case ErrorCode::LambdaTooSmall: return "LambdaTooSmall";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::KTooSmall: return "KTooSmall";
    case ErrorCode::OrderOutOfRange: return "OrderOutOfRange";
    case ErrorCode::NotAFibTreeSize: return "NotAFibTreeSize";
    case ErrorCode::AdjacentOnes: return "AdjacentOnes";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::InfeasibleDegreeBound: return "InfeasibleDegreeBound";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bbc

#endif  // BBC_ERROR_HPP
