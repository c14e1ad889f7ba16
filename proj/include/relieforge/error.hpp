#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace relieforge {

enum class ErrorCode {
  kPgmMalformedHeader,
  kPgmTruncated,
  kPgmMaxval,
  kPgmZeroDimension,
  kPgmSampleRange,
  kPngUnsupported,
  kPngCorrupt,
  kUnknownImageFormat,
  kTransferSyntax,
  kTransferCoverage,
  kTransferDomain,
  kTransferMalformed,
  kInvalidArgument,
  kGridTooSmall,
  kInvertedSolid,
  kStlTruncated,
  kStlParse,
  kReadFailure,
  kWriteFailure,
};

// Coarse grouping used to pick a process exit status.
enum class ErrorCategory { kUsage, kInput, kGeometry, kOutput };

std::string_view code_name(ErrorCode code) noexcept;
ErrorCategory category_of(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> location = std::nullopt)
      : std::runtime_error(message), code_(code), location_(location) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }

  /// Byte offset for binary formats, line number for text formats.
  std::optional<std::size_t> location() const noexcept { return location_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> location_;
};

}  // namespace relieforge
