#include <gtest/gtest.h>

#include <cstring>
#include <random>
#include <sstream>

#include "relieforge/error.hpp"
#include "relieforge/stl.hpp"
#include "test_support.hpp"

namespace relieforge {
namespace {

using testing::bytes_of;
using testing::constant_grid;

std::string binary_of(const TriangleMesh& m) {
  std::ostringstream out;
  write_binary_stl(m, out);
  return out.str();
}

std::string ascii_of(const TriangleMesh& m, std::string_view name = "relief") {
  std::ostringstream out;
  write_ascii_stl(m, name, out);
  return out.str();
}

TriangleMesh box() { return close_solid(constant_grid(2, 2, 5.2, {80.0, 28.0})).mesh; }

std::vector<std::uint8_t> as_bytes(const std::string& s) { return {s.begin(), s.end()}; }

TEST(BinaryStl, BoxIs684Bytes) {
  std::ostringstream out;
  EXPECT_EQ(write_binary_stl(box(), out), 684u);
  const auto s = out.str();
  ASSERT_EQ(s.size(), 684u);
  EXPECT_EQ(static_cast<unsigned char>(s[80]), 12);
  EXPECT_EQ(s.substr(0, kStlHeaderText.size()), kStlHeaderText);
  for (std::size_t i = kStlHeaderText.size(); i < 80; ++i) EXPECT_EQ(s[i], '\0');
}

TEST(BinaryStl, EmptyMesh) {
  const auto s = binary_of({});
  ASSERT_EQ(s.size(), 84u);
  EXPECT_EQ(s.substr(80), std::string(4, '\0'));
}

TEST(BinaryStl, CountIsLittleEndian) {
  TriangleMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  m.triangles = {{0, 1, 2}, {0, 2, 1}};
  const auto s = binary_of(m);
  EXPECT_EQ(s.substr(80, 4), std::string("\x02\x00\x00\x00", 4));
  // Normal recomputed from winding; attribute bytes zero.
  float nz = 0.0f;
  std::memcpy(&nz, s.data() + 84 + 8, 4);
  EXPECT_EQ(nz, 1.0f);
  EXPECT_EQ(s.substr(84 + 48, 2), std::string(2, '\0'));
}

TEST(BinaryStl, SizeLaw) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = close_solid(testing::random_grid(rng, 2 + rng() % 12, 2 + rng() % 12)).mesh;
    EXPECT_EQ(binary_of(m).size(), 84 + 50 * m.triangles.size());
  }
}

TEST(BinaryStl, RoundTripIsBitwise) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = close_solid(testing::random_grid(rng, 2 + rng() % 12, 2 + rng() % 12)).mesh;
    const auto first = binary_of(m);
    const auto back = read_stl(as_bytes(first));
    EXPECT_EQ(back.triangles.size(), m.triangles.size());
    EXPECT_EQ(back.vertices.size(), m.vertices.size());
    EXPECT_EQ(binary_of(back), first);
    const auto narrowed = narrowed_to_binary32(m);
    for (std::size_t i = 0; i < m.triangles.size(); ++i) {
      for (int k = 0; k < 3; ++k) {
        ASSERT_EQ(back.vertices[back.triangles[i][k]],
                  narrowed.vertices[narrowed.triangles[i][k]]);
      }
    }
  }
}

TEST(BinaryStl, FailingSinkReported) {
  std::ostringstream out;
  out.setstate(std::ios::badbit);
  try {
    write_binary_stl(box(), out);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kWriteFailure);
  }
}

TEST(AsciiStl, Structure) {
  TriangleMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  m.triangles = {{0, 1, 2}};
  EXPECT_EQ(ascii_of(m, "tri"),
            "solid tri\n"
            "  facet normal 0 0 1\n"
            "    outer loop\n"
            "      vertex 0 0 0\n"
            "      vertex 1 0 0\n"
            "      vertex 0 1 0\n"
            "    endloop\n"
            "  endfacet\n"
            "endsolid tri\n");
}

TEST(AsciiStl, EmptyMesh) { EXPECT_EQ(ascii_of({}, "x"), "solid x\nendsolid x\n"); }

TEST(AsciiStl, ShortestDecimal) {
  TriangleMesh m;
  m.vertices = {{0.1, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  m.triangles = {{0, 1, 2}};
  const auto text = ascii_of(m);
  EXPECT_NE(text.find("vertex 0.1 0 0\n"), std::string::npos);
  EXPECT_EQ(read_stl(as_bytes(text)).vertices[0].x, static_cast<double>(0.1f));
}

TEST(AsciiStl, AgreesWithBinary) {
  std::mt19937_64 rng(4);
  const auto m = close_solid(testing::random_grid(rng, 9, 7)).mesh;
  const auto a = read_stl(as_bytes(ascii_of(m)));
  const auto b = read_stl(as_bytes(binary_of(m)));
  EXPECT_EQ(a.vertices, b.vertices);
  EXPECT_EQ(a.triangles, b.triangles);
  const auto ra = validate(a), rb = validate(b);
  EXPECT_TRUE(ra.watertight);
  EXPECT_EQ(ra.signed_volume, rb.signed_volume);
}

TEST(ReadStl, TruncatedBinary) {
  for (std::size_t n : {0u, 10u, 83u}) {
    try {
      read_stl(std::vector<std::uint8_t>(n, 0));
      FAIL() << n;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kStlTruncated);
    }
  }
  auto bytes = as_bytes(binary_of(box()));
  bytes.pop_back();
  try {
    read_stl(bytes);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStlTruncated);
  }
}

TEST(ReadStl, AsciiMissingEndfacet) {
  const std::string text =
      "solid t\n"
      "  facet normal 0 0 1\n"
      "    outer loop\n"
      "      vertex 0 0 0\n"
      "      vertex 1 0 0\n"
      "      vertex 0 1 0\n"
      "    endloop\n"
      "endsolid t\n";
  try {
    read_stl(bytes_of(text));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStlParse);
    EXPECT_EQ(e.location(), 8u);
    EXPECT_NE(std::string(e.what()).find("line 8"), std::string::npos);
  }
}

TEST(ReadStl, AsciiBadNumber) {
  try {
    read_stl(bytes_of("solid t\nfacet normal 0 0 one\n"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStlParse);
    EXPECT_EQ(e.location(), 2u);
  }
}

TEST(ReadStl, BinaryHeaderStartingWithSolid) {
  auto bytes = as_bytes(binary_of(box()));
  std::memcpy(bytes.data(), "solid box", 9);
  const auto m = read_stl(bytes);
  EXPECT_EQ(m.triangles.size(), 12u);
  EXPECT_TRUE(validate(m).watertight);
}

TEST(ReadStl, KeepsStoredNormals) {
  const auto m = read_stl(bytes_of(
      "solid t\nfacet normal 0 0 -1\nouter loop\nvertex 0 0 0\nvertex 1 0 0\n"
      "vertex 0 1 0\nendloop\nendfacet\nendsolid t\n"));
  ASSERT_EQ(m.normals.size(), 1u);
  EXPECT_EQ(m.normals[0], (Vec3{0.0, 0.0, -1.0}));
}

}  // namespace
}  // namespace relieforge
