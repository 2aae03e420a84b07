#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace twed {

  enum class ErrorCode {
    NonIncreasingTimestamps,
    DimensionMismatch,
    NonFiniteValue,
    LengthMismatch,
    IndexOutOfRange,
    InvalidParams,
    InvalidConfig,
    InstanceTooLarge,
    EmptySeries,
    TooManySegments,
    MalformedHeader,
    NonNumericField,
    EmptyRow,
    Unlabeled,
    InvalidArgument,
    Io,
  };

  constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
      case ErrorCode::NonIncreasingTimestamps: return "NonIncreasingTimestamps";
      case ErrorCode::DimensionMismatch: return "DimensionMismatch";
      case ErrorCode::NonFiniteValue: return "NonFiniteValue";
      case ErrorCode::LengthMismatch: return "LengthMismatch";
      case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
      case ErrorCode::InvalidParams: return "InvalidParams";
      case ErrorCode::InvalidConfig: return "InvalidConfig";
      case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
      case ErrorCode::EmptySeries: return "EmptySeries";
      case ErrorCode::TooManySegments: return "TooManySegments";
      case ErrorCode::MalformedHeader: return "MalformedHeader";
      case ErrorCode::NonNumericField: return "NonNumericField";
      case ErrorCode::EmptyRow: return "EmptyRow";
      case ErrorCode::Unlabeled: return "Unlabeled";
      case ErrorCode::InvalidArgument: return "InvalidArgument";
      case ErrorCode::Io: return "Io";
    }
    return "Unknown";
  }

  /// Every failure raised by the library carries one of the codes above; the message is prefixed
  /// with the code name so it stays greppable once it reaches a terminal.
  class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
  };

} // namespace twed
