#include <zlib.h>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <string>

#include "relieforge/error.hpp"
#include "relieforge/image.hpp"

namespace relieforge {
namespace {

constexpr std::array<std::uint8_t, 8> kSignature = {0x89, 'P', 'N', 'G',
                                                    '\r', '\n', 0x1a, '\n'};

enum ColorType : std::uint8_t {
  kGray = 0,
  kRgb = 2,
  kPalette = 3,
  kGrayAlpha = 4,
  kRgba = 6,
};

[[noreturn]] void corrupt(const std::string& what, std::size_t offset) {
  throw Error(ErrorCode::kPngCorrupt,
              "PNG: " + what + " at byte " + std::to_string(offset), offset);
}

[[noreturn]] void unsupported(const std::string& what) {
  throw Error(ErrorCode::kPngUnsupported, "PNG: unsupported " + what);
}

std::uint32_t be32(std::span<const std::uint8_t> b, std::size_t at) {
  return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16) |
         (std::uint32_t{b[at + 2]} << 8) | std::uint32_t{b[at + 3]};
}

std::uint8_t paeth(std::uint8_t a, std::uint8_t b, std::uint8_t c) {
  const int p = int{a} + int{b} - int{c};
  const int pa = std::abs(p - a);
  const int pb = std::abs(p - b);
  const int pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return a;
  if (pb <= pc) return b;
  return c;
}

// Reverses per-scanline filtering in place, leaving filter bytes untouched.
void unfilter(std::vector<std::uint8_t>& data, std::size_t height,
              std::size_t stride, std::size_t bpp) {
  const std::size_t line = stride + 1;
  for (std::size_t y = 0; y < height; ++y) {
    std::uint8_t* cur = data.data() + y * line + 1;
    const std::uint8_t* prev = y > 0 ? data.data() + (y - 1) * line + 1 : nullptr;
    const std::uint8_t filter = cur[-1];
    for (std::size_t x = 0; x < stride; ++x) {
      const std::uint8_t a = x >= bpp ? cur[x - bpp] : 0;
      const std::uint8_t b = prev ? prev[x] : 0;
      const std::uint8_t c = (prev && x >= bpp) ? prev[x - bpp] : 0;
      switch (filter) {
        case 0: break;
        case 1: cur[x] = static_cast<std::uint8_t>(cur[x] + a); break;
        case 2: cur[x] = static_cast<std::uint8_t>(cur[x] + b); break;
        case 3: cur[x] = static_cast<std::uint8_t>(cur[x] + ((a + b) >> 1)); break;
        case 4: cur[x] = static_cast<std::uint8_t>(cur[x] + paeth(a, b, c)); break;
        default:
          corrupt("invalid filter type " + std::to_string(filter) + " on row " +
                      std::to_string(y),
                  0);
      }
    }
  }
}

}  // namespace

RasterImage decode_png(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kSignature.size() ||
      !std::equal(kSignature.begin(), kSignature.end(), bytes.begin())) {
    corrupt("bad signature", 0);
  }

  std::uint32_t width = 0, height = 0;
  std::uint8_t color_type = 0;
  bool have_header = false, have_end = false;
  std::vector<std::uint8_t> compressed;

  std::size_t pos = kSignature.size();
  while (!have_end) {
    if (bytes.size() - pos < 12) corrupt("truncated chunk", pos);
    const std::uint32_t length = be32(bytes, pos);
    if (length > bytes.size() - pos - 12) corrupt("chunk overruns file", pos);
    const auto type = bytes.subspan(pos + 4, 4);
    const auto data = bytes.subspan(pos + 8, length);
    const std::uint32_t stored_crc = be32(bytes, pos + 8 + length);
    const auto crc = crc32(crc32(0L, Z_NULL, 0), type.data(),
                           static_cast<uInt>(4 + length));
    if (crc != stored_crc) corrupt("CRC mismatch", pos);
    const std::string name(type.begin(), type.end());

    if (name == "IHDR") {
      if (length != 13 || have_header) corrupt("bad IHDR", pos);
      width = be32(data, 0);
      height = be32(data, 4);
      const std::uint8_t depth = data[8];
      color_type = data[9];
      if (width == 0 || height == 0) corrupt("zero dimension", pos);
      if (data[10] != 0 || data[11] != 0) corrupt("bad compression/filter method", pos);
      if (depth != 8) unsupported("bit depth " + std::to_string(depth));
      if (color_type == kPalette) unsupported("palette color type");
      if (color_type != kGray && color_type != kRgb &&
          color_type != kGrayAlpha && color_type != kRgba) {
        corrupt("invalid color type " + std::to_string(color_type), pos);
      }
      if (data[12] != 0) unsupported("interlaced image");
      have_header = true;
    } else if (!have_header) {
      corrupt("first chunk is not IHDR", pos);
    } else if (name == "IDAT") {
      compressed.insert(compressed.end(), data.begin(), data.end());
    } else if (name == "IEND") {
      have_end = true;
    } else if (name == "PLTE") {
      // Optional suggested palette for truecolor; irrelevant here.
    } else if ((type[0] & 0x20) == 0) {
      unsupported("critical chunk " + name);
    }
    pos += 12 + length;
  }
  if (compressed.empty()) corrupt("no IDAT data", pos);

  std::size_t samples_per_pixel = 1;
  switch (color_type) {
    case kGray: samples_per_pixel = 1; break;
    case kGrayAlpha: samples_per_pixel = 2; break;
    case kRgb: samples_per_pixel = 3; break;
    case kRgba: samples_per_pixel = 4; break;
  }
  const std::size_t stride = std::size_t{width} * samples_per_pixel;
  const std::size_t expected = (stride + 1) * height;
  std::vector<std::uint8_t> raw(expected);
  uLongf out_len = static_cast<uLongf>(expected);
  const int rc = uncompress(raw.data(), &out_len, compressed.data(),
                            static_cast<uLong>(compressed.size()));
  if (rc != Z_OK || out_len != expected) {
    corrupt("zlib stream error or size mismatch", kSignature.size());
  }
  unfilter(raw, height, stride, samples_per_pixel);

  const bool has_alpha = color_type == kGrayAlpha || color_type == kRgba;
  RasterImage img;
  img.width = width;
  img.height = height;
  img.channels = (color_type == kGray || color_type == kGrayAlpha) ? 1 : 3;
  img.samples.reserve(std::size_t{width} * height * img.channels);
  for (std::size_t y = 0; y < height; ++y) {
    const std::uint8_t* row = raw.data() + y * (stride + 1) + 1;
    for (std::size_t x = 0; x < width; ++x) {
      const std::uint8_t* px = row + x * samples_per_pixel;
      if (!has_alpha) {
        for (std::size_t k = 0; k < img.channels; ++k) {
          img.samples.push_back(px[k] / 255.0);
        }
      } else {
        // Composite over white: c*a + 1*(1-a), all in 1/255 units.
        const double alpha = px[img.channels];
        for (std::size_t k = 0; k < img.channels; ++k) {
          img.samples.push_back((px[k] * alpha + 255.0 * (255.0 - alpha)) /
                                (255.0 * 255.0));
        }
      }
    }
  }
  return img;
}

RasterImage decode_image(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '2' || bytes[1] == '5')) {
    return decode_pgm(bytes);
  }
  if (bytes.size() >= kSignature.size() &&
      std::equal(kSignature.begin(), kSignature.end(), bytes.begin())) {
    return decode_png(bytes);
  }
  throw Error(ErrorCode::kUnknownImageFormat,
              "unrecognized image format (expected PGM P2/P5 or PNG)", 0);
}

}  // namespace relieforge
