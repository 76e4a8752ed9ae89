#include "tgx/error.hpp"

namespace tgx {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidVertex: return "InvalidVertex";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdgeInSnapshot: return "DuplicateEdgeInSnapshot";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::NonPositiveTarget: return "NonPositiveTarget";
    case ErrorCode::InvalidLifetime: return "InvalidLifetime";
    case ErrorCode::TimeStepOutOfRange: return "TimeStepOutOfRange";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::NotAComponent: return "NotAComponent";
    case ErrorCode::NonIntersectingConsecutive: return "NonIntersectingConsecutive";
    case ErrorCode::SourceNotInFirst: return "SourceNotInFirst";
    case ErrorCode::NonMonotoneTimes: return "NonMonotoneTimes";
    case ErrorCode::EdgeAbsentAtTime: return "EdgeAbsentAtTime";
    case ErrorCode::CertificateTooLong: return "CertificateTooLong";
    case ErrorCode::InstanceTooLargeForOracle: return "InstanceTooLargeForOracle";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotATemporalTree: return "NotATemporalTree";
    case ErrorCode::VertexNotInTree: return "VertexNotInTree";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::StructureViolation: return "StructureViolation";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::BoundViolation: return "BoundViolation";
    case ErrorCode::ArithmeticOverflow: return "ArithmeticOverflow";
    case ErrorCode::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorCode::InternalError: return "InternalError";
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::EmptyFormula: return "EmptyFormula";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::ClauseTooWide: return "ClauseTooWide";
    case ErrorCode::NotRegular: return "NotRegular";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what, std::optional<std::size_t> line)
    : std::runtime_error(what), code_(code), line_(line) {}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::ArithmeticOverflow, "weight addition overflows int64");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::ArithmeticOverflow, "weight subtraction overflows int64");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::ArithmeticOverflow, "weight product overflows int64");
  return r;
}

}  // namespace tgx
