#include <algorithm>

#include "relieforge/image.hpp"

namespace relieforge {

GrayImage to_grayscale(const RasterImage& img) {
  GrayImage out;
  out.width = img.width;
  out.height = img.height;
  if (img.channels == 1) {
    out.values = img.samples;
    return out;
  }
  const std::size_t count = img.width * img.height;
  out.values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = img.samples[3 * i];
    const double g = img.samples[3 * i + 1];
    const double b = img.samples[3 * i + 2];
    // Integer weights keep white at exactly 1.0; 0.299+0.587+0.114 in
    // binary64 sums to 1 - 2^-53.
    const double luma = (299.0 * r + 587.0 * g + 114.0 * b) / 1000.0;
    out.values.push_back(std::clamp(luma, 0.0, 1.0));
  }
  return out;
}

}  // namespace relieforge
