#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "relieforge/heightfield.hpp"

namespace relieforge {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

using Triangle = std::array<std::uint32_t, 3>;

/// Indexed triangle mesh, counter-clockwise winding seen from outside.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  /// One unit normal per triangle. Built meshes derive them from winding;
  /// meshes read from STL keep whatever the file stored.
  std::vector<Vec3> normals;
};

/// Normalized (v1 - v0) x (v2 - v0), or the zero vector for a degenerate
/// triangle.
Vec3 winding_normal(Vec3 v0, Vec3 v1, Vec3 v2);

struct SolidOptions {
  double base_z = 0.0;
  /// Triangles with area below min_feature^2 * 1e-6 are dropped.
  double min_feature = 0.001;
  unsigned threads = 1;
};

struct SolidResult {
  TriangleMesh mesh;
  std::size_t degenerate = 0;  // triangles dropped for tiny area
};

/// Open relief surface: one vertex per sample, each cell split along its
/// (r,c)-(r+1,c+1) diagonal, triangles in row-major cell order.
TriangleMesh tessellate_top(const HeightGrid& g, unsigned threads = 1);

/// Closed solid: top relief, a base grid at base_z with reversed winding,
/// and perimeter walls. Emission order is top, base, then walls walking the
/// boundary counter-clockwise from (0,0). Throws kInvertedSolid if any
/// height is below base_z.
SolidResult close_solid(const HeightGrid& g, const SolidOptions& opts = {});

/// Volume of the solid close_solid builds, by summing triangular prisms
/// over the same diagonal split. Throws kInvertedSolid like close_solid.
double analytic_volume(const HeightGrid& g, double base_z = 0.0);

struct MeshReport {
  std::size_t vertex_count = 0;
  std::size_t triangle_count = 0;
  std::size_t edge_count = 0;
  long long euler_characteristic = 0;
  bool watertight = false;
  std::size_t boundary_edges = 0;     // one incident triangle
  std::size_t nonmanifold_edges = 0;  // three or more, or same-direction pair
  double signed_volume = 0.0;
  double surface_area = 0.0;
  Vec3 bbox_min;
  Vec3 bbox_max;
  std::size_t degenerate_count = 0;  // zero-area or repeated-index triangles
};

MeshReport validate(const TriangleMesh& m);

/// Copy with every coordinate rounded to binary32, i.e. the mesh as an STL
/// file stores it.
TriangleMesh narrowed_to_binary32(const TriangleMesh& m);

}  // namespace relieforge
