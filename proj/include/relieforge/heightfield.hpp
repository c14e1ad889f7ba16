#pragma once

#include <cstddef>
#include <vector>

namespace relieforge {

/// Row-major grid of heights before a physical extent is attached.
struct ScalarGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }

  friend bool operator==(const ScalarGrid&, const ScalarGrid&) = default;
};

struct PhysicalExtent {
  double width_mm = 80.0;  // x span
  double depth_mm = 28.0;  // y span
};

/// Heights in mm on a uniform lattice. Sample (r, c) sits at
/// (x_at(c), y_at(r)); the last column and row land exactly on the extent.
class HeightGrid {
 public:
  HeightGrid(std::size_t rows, std::size_t cols, std::vector<double> heights,
             PhysicalExtent extent);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<double>& heights() const { return heights_; }
  double height(std::size_t r, std::size_t c) const {
    return heights_[r * cols_ + c];
  }
  PhysicalExtent extent() const { return extent_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }

  double x_at(std::size_t c) const {
    return c + 1 == cols_ ? extent_.width_mm : static_cast<double>(c) * dx_;
  }
  double y_at(std::size_t r) const {
    return r + 1 == rows_ ? extent_.depth_mm : static_cast<double>(r) * dy_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> heights_;
  PhysicalExtent extent_;
  double dx_;
  double dy_;
};

/// Maps image-space rows (row 0 = top) to mesh-space rows (row 0 at y = 0)
/// by a vertical flip, so the relief reads correctly from +Z. `mirror_x`
/// also reverses columns, for reliefs read from the build-plate side.
ScalarGrid grid_from_image(const ScalarGrid& image_space, bool mirror_x);

/// Surrounds the grid with `thickness` cells of `value` on every side.
ScalarGrid pad_border(const ScalarGrid& g, double value, std::size_t thickness);

/// Removes `thickness` cells from every side; inverse of pad_border.
ScalarGrid crop_border(const ScalarGrid& g, std::size_t thickness);

struct ExtentResult {
  HeightGrid grid;
  std::size_t clamped = 0;  // negative heights raised to 0
};

/// Attaches physical spacing dx = width/(cols-1), dy = depth/(rows-1).
/// Throws kGridTooSmall when rows or cols < 2, kInvalidArgument for a
/// non-positive extent.
ExtentResult assign_extent(const ScalarGrid& g, PhysicalExtent extent);

}  // namespace relieforge
