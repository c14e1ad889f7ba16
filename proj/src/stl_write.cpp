#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "relieforge/error.hpp"
#include "relieforge/stl.hpp"

namespace relieforge {
namespace {

void put_u32(char* out, std::uint32_t v) {
  out[0] = static_cast<char>(v & 0xffu);
  out[1] = static_cast<char>((v >> 8) & 0xffu);
  out[2] = static_cast<char>((v >> 16) & 0xffu);
  out[3] = static_cast<char>((v >> 24) & 0xffu);
}

void put_vec(char* out, float x, float y, float z) {
  put_u32(out, std::bit_cast<std::uint32_t>(x));
  put_u32(out + 4, std::bit_cast<std::uint32_t>(y));
  put_u32(out + 8, std::bit_cast<std::uint32_t>(z));
}

struct NarrowTriangle {
  std::array<float, 3> normal;
  std::array<std::array<float, 3>, 3> v;
};

NarrowTriangle narrow(const TriangleMesh& m, const Triangle& t) {
  NarrowTriangle out{};
  std::array<Vec3, 3> wide{};
  for (int k = 0; k < 3; ++k) {
    const Vec3 p = m.vertices[t[k]];
    out.v[k] = {static_cast<float>(p.x), static_cast<float>(p.y),
                static_cast<float>(p.z)};
    if (!std::isfinite(out.v[k][0]) || !std::isfinite(out.v[k][1]) ||
        !std::isfinite(out.v[k][2])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "STL: vertex coordinate not representable as finite binary32");
    }
    wide[k] = {out.v[k][0], out.v[k][1], out.v[k][2]};
  }
  // Normal from the coordinates actually written.
  const Vec3 n = winding_normal(wide[0], wide[1], wide[2]);
  out.normal = {static_cast<float>(n.x), static_cast<float>(n.y),
                static_cast<float>(n.z)};
  return out;
}

void check_sink(const std::ostream& sink) {
  if (!sink) throw Error(ErrorCode::kWriteFailure, "STL: write to output failed");
}

std::string shortest(float v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::uint64_t write_binary_stl(const TriangleMesh& m, std::ostream& sink) {
  if (m.triangles.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "STL: too many triangles for binary count");
  }
  std::array<char, 84> header{};
  std::copy(kStlHeaderText.begin(), kStlHeaderText.end(), header.begin());
  put_u32(header.data() + 80, static_cast<std::uint32_t>(m.triangles.size()));
  sink.write(header.data(), header.size());
  check_sink(sink);

  std::array<char, 50> record{};
  for (const auto& t : m.triangles) {
    const NarrowTriangle nt = narrow(m, t);
    put_vec(record.data(), nt.normal[0], nt.normal[1], nt.normal[2]);
    for (int k = 0; k < 3; ++k) {
      put_vec(record.data() + 12 + 12 * k, nt.v[k][0], nt.v[k][1], nt.v[k][2]);
    }
    record[48] = record[49] = 0;
    sink.write(record.data(), record.size());
  }
  check_sink(sink);
  return 84 + 50 * static_cast<std::uint64_t>(m.triangles.size());
}

void write_ascii_stl(const TriangleMesh& m, std::string_view name,
                     std::ostream& sink) {
  if (name.find_first_of("\r\n") != std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument, "STL: solid name must not contain newlines");
  }
  sink << "solid " << name << '\n';
  for (const auto& t : m.triangles) {
    const NarrowTriangle nt = narrow(m, t);
    sink << "  facet normal " << shortest(nt.normal[0]) << ' ' << shortest(nt.normal[1])
         << ' ' << shortest(nt.normal[2]) << '\n'
         << "    outer loop\n";
    for (const auto& v : nt.v) {
      sink << "      vertex " << shortest(v[0]) << ' ' << shortest(v[1]) << ' '
           << shortest(v[2]) << '\n';
    }
    sink << "    endloop\n"
         << "  endfacet\n";
  }
  sink << "endsolid " << name << '\n';
  check_sink(sink);
}

}  // namespace relieforge
