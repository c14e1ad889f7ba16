#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string_view>

#include "relieforge/mesh.hpp"

namespace relieforge {

/// Fixed 80-byte header text, zero padded.
inline constexpr std::string_view kStlHeaderText = "relieforge binary STL";

/// Little-endian binary STL: 80-byte header, uint32 count, 50-byte records.
/// Coordinates narrow to binary32 here and nowhere else; normals are
/// recomputed from winding. Returns bytes written (84 + 50 * T).
std::uint64_t write_binary_stl(const TriangleMesh& m, std::ostream& sink);

/// ASCII STL with shortest round-trip binary32 decimals.
void write_ascii_stl(const TriangleMesh& m, std::string_view name,
                     std::ostream& sink);

/// Reads either STL flavor. The data is ASCII only if it starts with
/// "solid" and parses fully as ASCII; anything else is treated as binary.
/// Vertices are merged by bitwise-equal binary32 coordinates and the stored
/// facet normals are kept as-is.
TriangleMesh read_stl(std::span<const std::uint8_t> bytes);

}  // namespace relieforge
