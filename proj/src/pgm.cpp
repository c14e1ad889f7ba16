#include <cmath>
#include <string>

#include "relieforge/error.hpp"
#include "relieforge/image.hpp"

namespace relieforge {
namespace {

bool is_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

bool is_digit(std::uint8_t c) { return c >= '0' && c <= '9'; }

class PgmReader {
 public:
  explicit PgmReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }
  bool at_end() const { return pos_ >= bytes_.size(); }

  // Skips whitespace and '#' comments. Returns false at end of input.
  bool skip_separators() {
    while (!at_end()) {
      const auto c = bytes_[pos_];
      if (is_space(c)) {
        ++pos_;
      } else if (c == '#') {
        while (!at_end() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') {
          ++pos_;
        }
      } else {
        return true;
      }
    }
    return false;
  }

  // Reads an unsigned decimal. Values beyond `limit` are reported through
  // `overflow` rather than wrapping.
  bool read_number(std::uint64_t limit, std::uint64_t& value, bool& overflow) {
    if (at_end() || !is_digit(bytes_[pos_])) return false;
    value = 0;
    overflow = false;
    while (!at_end() && is_digit(bytes_[pos_])) {
      if (!overflow) {
        value = value * 10 + (bytes_[pos_] - '0');
        if (value > limit) overflow = true;
      }
      ++pos_;
    }
    return true;
  }

  std::uint8_t byte_at(std::size_t i) const { return bytes_[i]; }
  void advance(std::size_t n) { pos_ += n; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what,
                       std::size_t offset) {
  throw Error(code, "PGM: " + what + " at byte " + std::to_string(offset),
              offset);
}

std::uint64_t header_field(PgmReader& in, const char* name,
                           std::uint64_t limit, ErrorCode overflow_code) {
  if (!in.skip_separators()) {
    fail(ErrorCode::kPgmMalformedHeader,
         std::string("unexpected end of header reading ") + name, in.pos());
  }
  const std::size_t start = in.pos();
  std::uint64_t value = 0;
  bool overflow = false;
  if (!in.read_number(limit, value, overflow)) {
    fail(ErrorCode::kPgmMalformedHeader,
         std::string("expected decimal ") + name, start);
  }
  if (!in.at_end() && !is_space(in.byte_at(in.pos())) &&
      in.byte_at(in.pos()) != '#') {
    fail(ErrorCode::kPgmMalformedHeader,
         std::string("junk after ") + name, in.pos());
  }
  if (overflow) {
    fail(overflow_code, std::string(name) + " too large", start);
  }
  return value;
}

}  // namespace

RasterImage decode_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    fail(ErrorCode::kPgmMalformedHeader, "missing P2/P5 magic", 0);
  }
  const bool binary = bytes[1] == '5';
  PgmReader in(bytes);
  in.advance(2);
  if (!in.at_end() && !is_space(in.byte_at(in.pos())) &&
      in.byte_at(in.pos()) != '#') {
    fail(ErrorCode::kPgmMalformedHeader, "missing P2/P5 magic", 0);
  }

  // 2^31 per side bounds the allocation arithmetic below.
  constexpr std::uint64_t kMaxSide = std::uint64_t{1} << 31;
  const std::size_t width_at = in.pos();
  const auto width =
      header_field(in, "width", kMaxSide, ErrorCode::kPgmMalformedHeader);
  const auto height =
      header_field(in, "height", kMaxSide, ErrorCode::kPgmMalformedHeader);
  if (width == 0 || height == 0) {
    fail(ErrorCode::kPgmZeroDimension,
         "zero image dimension " + std::to_string(width) + "x" +
             std::to_string(height),
         width_at);
  }
  in.skip_separators();
  const std::size_t maxval_at = in.pos();
  const auto maxval = header_field(in, "maxval", 65535, ErrorCode::kPgmMaxval);
  if (maxval == 0) {
    fail(ErrorCode::kPgmMaxval, "maxval must be in [1, 65535]", maxval_at);
  }

  RasterImage img;
  img.width = static_cast<std::size_t>(width);
  img.height = static_cast<std::size_t>(height);
  img.channels = 1;
  const std::size_t count = img.width * img.height;
  const double scale = static_cast<double>(maxval);

  if (binary) {
    // Exactly one whitespace byte separates maxval from the raster.
    if (in.at_end()) {
      fail(ErrorCode::kPgmTruncated, "missing pixel data", in.pos());
    }
    if (!is_space(in.byte_at(in.pos()))) {
      fail(ErrorCode::kPgmMalformedHeader, "expected whitespace after maxval",
           in.pos());
    }
    in.advance(1);
    const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
    if (in.remaining() / sample_bytes < count) {
      fail(ErrorCode::kPgmTruncated,
           "truncated pixel data: need " + std::to_string(count * sample_bytes) +
               " bytes, have " + std::to_string(in.remaining()),
           in.pos() + in.remaining());
    }
    img.samples.reserve(count);
    const std::size_t base = in.pos();
    for (std::size_t i = 0; i < count; ++i) {
      std::uint32_t raw;
      if (sample_bytes == 1) {
        raw = in.byte_at(base + i);
      } else {
        raw = (std::uint32_t{in.byte_at(base + 2 * i)} << 8) |
              in.byte_at(base + 2 * i + 1);
      }
      if (raw > maxval) {
        fail(ErrorCode::kPgmSampleRange, "sample exceeds maxval",
             base + i * sample_bytes);
      }
      img.samples.push_back(raw / scale);
    }
    return img;
  }

  img.samples.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!in.skip_separators()) {
      fail(ErrorCode::kPgmTruncated,
           "truncated pixel data: got " + std::to_string(i) + " of " +
               std::to_string(count) + " samples",
           in.pos());
    }
    const std::size_t at = in.pos();
    std::uint64_t raw = 0;
    bool overflow = false;
    if (!in.read_number(maxval, raw, overflow)) {
      fail(ErrorCode::kPgmMalformedHeader, "expected decimal sample", at);
    }
    if (overflow) fail(ErrorCode::kPgmSampleRange, "sample exceeds maxval", at);
    img.samples.push_back(static_cast<double>(raw) / scale);
  }
  return img;
}

std::vector<std::uint8_t> encode_pgm(std::size_t width, std::size_t height,
                                     std::span<const std::uint8_t> levels) {
  if (levels.size() != width * height) {
    throw Error(ErrorCode::kInvalidArgument,
                "PGM encode: level count does not match dimensions");
  }
  const std::string header = "P5\n" + std::to_string(width) + " " +
                             std::to_string(height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), levels.begin(), levels.end());
  return out;
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
  std::vector<std::uint8_t> levels;
  levels.reserve(img.values.size());
  for (double v : img.values) {
    const double clamped = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
    levels.push_back(static_cast<std::uint8_t>(std::lround(clamped * 255.0)));
  }
  return encode_pgm(img.width, img.height, levels);
}

}  // namespace relieforge
