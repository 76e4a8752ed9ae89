#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace tgx {

enum class ErrorCode {
  InvalidVertex,
  SelfLoop,
  DuplicateEdgeInSnapshot,
  NonPositiveWeight,
  NonPositiveTarget,
  InvalidLifetime,
  TimeStepOutOfRange,
  SyntaxError,
  NotAComponent,
  NonIntersectingConsecutive,
  SourceNotInFirst,
  NonMonotoneTimes,
  EdgeAbsentAtTime,
  CertificateTooLong,
  InstanceTooLargeForOracle,
  BudgetExceeded,
  NotATemporalTree,
  VertexNotInTree,
  DisconnectedGraph,
  StructureViolation,
  NotApplicable,
  BoundViolation,
  ArithmeticOverflow,
  IterationCapExceeded,
  InternalError,
  NotPowerOfTwo,
  InvalidInput,
  EmptyFormula,
  NotMonotone,
  ClauseTooWide,
  NotRegular,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  // Set for SyntaxError raised by the text parser (1-based).
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace tgx
