#include "relieforge/error.hpp"

namespace relieforge {

std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kPgmMalformedHeader: return "pgm.malformed_header";
    case ErrorCode::kPgmTruncated: return "pgm.truncated";
    case ErrorCode::kPgmMaxval: return "pgm.maxval_range";
    case ErrorCode::kPgmZeroDimension: return "pgm.zero_dimension";
    case ErrorCode::kPgmSampleRange: return "pgm.sample_range";
    case ErrorCode::kPngUnsupported: return "png.unsupported";
    case ErrorCode::kPngCorrupt: return "png.corrupt";
    case ErrorCode::kUnknownImageFormat: return "image.unknown_format";
    case ErrorCode::kTransferSyntax: return "transfer.syntax";
    case ErrorCode::kTransferCoverage: return "transfer.coverage";
    case ErrorCode::kTransferDomain: return "transfer.domain";
    case ErrorCode::kTransferMalformed: return "transfer.malformed";
    case ErrorCode::kInvalidArgument: return "usage.invalid_argument";
    case ErrorCode::kGridTooSmall: return "geometry.too_small";
    case ErrorCode::kInvertedSolid: return "geometry.inverted_solid";
    case ErrorCode::kStlTruncated: return "stl.truncated";
    case ErrorCode::kStlParse: return "stl.parse";
    case ErrorCode::kReadFailure: return "io.read";
    case ErrorCode::kWriteFailure: return "io.write";
  }
  return "unknown";
}

ErrorCategory category_of(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return ErrorCategory::kUsage;
    case ErrorCode::kTransferDomain:
    case ErrorCode::kTransferMalformed:
    case ErrorCode::kGridTooSmall:
    case ErrorCode::kInvertedSolid:
      return ErrorCategory::kGeometry;
    case ErrorCode::kWriteFailure:
      return ErrorCategory::kOutput;
    default:
      return ErrorCategory::kInput;
  }
}

}  // namespace relieforge
