#include <cmath>
#include <string>

#include "relieforge/error.hpp"
#include "relieforge/heightfield.hpp"

namespace relieforge {

HeightGrid::HeightGrid(std::size_t rows, std::size_t cols,
                       std::vector<double> heights, PhysicalExtent extent)
    : rows_(rows), cols_(cols), heights_(std::move(heights)), extent_(extent) {
  if (rows_ < 2 || cols_ < 2) {
    throw Error(ErrorCode::kGridTooSmall,
                "height grid needs at least 2x2 samples, got " +
                    std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  if (heights_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kInvalidArgument, "height count does not match grid shape");
  }
  if (!(extent_.width_mm > 0.0) || !(extent_.depth_mm > 0.0) ||
      !std::isfinite(extent_.width_mm) || !std::isfinite(extent_.depth_mm)) {
    throw Error(ErrorCode::kInvalidArgument, "physical extent must be finite and > 0");
  }
  for (double h : heights_) {
    if (!(h >= 0.0) || !std::isfinite(h)) {
      throw Error(ErrorCode::kInvalidArgument, "heights must be finite and >= 0");
    }
  }
  dx_ = extent_.width_mm / static_cast<double>(cols_ - 1);
  dy_ = extent_.depth_mm / static_cast<double>(rows_ - 1);
}

ScalarGrid grid_from_image(const ScalarGrid& image_space, bool mirror_x) {
  ScalarGrid out;
  out.rows = image_space.rows;
  out.cols = image_space.cols;
  out.values.resize(image_space.values.size());
  for (std::size_t r = 0; r < out.rows; ++r) {
    const std::size_t src_r = out.rows - 1 - r;
    for (std::size_t c = 0; c < out.cols; ++c) {
      const std::size_t src_c = mirror_x ? out.cols - 1 - c : c;
      out.at(r, c) = image_space.at(src_r, src_c);
    }
  }
  return out;
}

ScalarGrid pad_border(const ScalarGrid& g, double value, std::size_t thickness) {
  if (thickness == 0) return g;
  ScalarGrid out;
  out.rows = g.rows + 2 * thickness;
  out.cols = g.cols + 2 * thickness;
  out.values.assign(out.rows * out.cols, value);
  for (std::size_t r = 0; r < g.rows; ++r) {
    for (std::size_t c = 0; c < g.cols; ++c) {
      out.at(r + thickness, c + thickness) = g.at(r, c);
    }
  }
  return out;
}

ScalarGrid crop_border(const ScalarGrid& g, std::size_t thickness) {
  if (2 * thickness > g.rows || 2 * thickness > g.cols) {
    throw Error(ErrorCode::kInvalidArgument, "crop thickness exceeds grid size");
  }
  ScalarGrid out;
  out.rows = g.rows - 2 * thickness;
  out.cols = g.cols - 2 * thickness;
  out.values.reserve(out.rows * out.cols);
  for (std::size_t r = 0; r < out.rows; ++r) {
    for (std::size_t c = 0; c < out.cols; ++c) {
      out.values.push_back(g.at(r + thickness, c + thickness));
    }
  }
  return out;
}

ExtentResult assign_extent(const ScalarGrid& g, PhysicalExtent extent) {
  if (g.rows < 2 || g.cols < 2) {
    throw Error(ErrorCode::kGridTooSmall,
                "height grid needs at least 2x2 samples, got " +
                    std::to_string(g.rows) + "x" + std::to_string(g.cols));
  }
  std::vector<double> heights = g.values;
  std::size_t clamped = 0;
  for (double& h : heights) {
    if (h < 0.0) {
      h = 0.0;
      ++clamped;
    }
  }
  return {HeightGrid(g.rows, g.cols, std::move(heights), extent), clamped};
}

}  // namespace relieforge
