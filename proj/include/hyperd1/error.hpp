#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperd1 {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  InvalidMetric,
  IndexOutOfRange,
  DuplicateIndex,
  EmptySet,
  SpaceMismatch,
  InvalidGraph,
  ComponentMissesSet,
  VertexNotCovered,
  TooLarge,
  CapExceeded,
  NotSeparated,
  NotATree,
  DegenerateLadder,
  GeneratorFailure,
  NoContractionInfo,
  CertificateUnavailable,
};

std::string_view errorCodeName(ErrorCode code) noexcept;

// All library failures are reported through this one exception type; the C
// API maps the code onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hyperd1
