#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace relieforge {

/// Decoded raster with samples normalized to [0,1], row-major, channels
/// interleaved. Row 0 is the top image row.
struct RasterImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t channels = 1;  // 1 (gray) or 3 (RGB)
  std::vector<double> samples;
};

/// Single-channel intensity image in [0,1]; row 0 is the top image row.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> values;

  double at(std::size_t row, std::size_t col) const {
    return values[row * width + col];
  }
};

/// Decodes ASCII (P2) or binary (P5) graymaps. Each sample becomes
/// raw/maxval. P5 with maxval > 255 reads big-endian 16-bit samples.
RasterImage decode_pgm(std::span<const std::uint8_t> bytes);

/// Decodes non-interlaced 8-bit PNG of color type gray, RGB, gray+alpha or
/// RGBA. Alpha is composited over white and dropped.
RasterImage decode_png(std::span<const std::uint8_t> bytes);

/// Dispatches on the leading magic bytes (PGM or PNG).
RasterImage decode_image(std::span<const std::uint8_t> bytes);

/// 1-channel input is copied; RGB goes through Rec. 601 luma.
GrayImage to_grayscale(const RasterImage& img);

/// P5 with maxval 255; values are rounded to the nearest level.
std::vector<std::uint8_t> encode_pgm(const GrayImage& img);

/// P5 with maxval 255 from raw 8-bit levels (width*height bytes).
std::vector<std::uint8_t> encode_pgm(std::size_t width, std::size_t height,
                                     std::span<const std::uint8_t> levels);

}  // namespace relieforge
