#include <algorithm>
#include <array>
#include <cctype>
#include <bit>
#include <charconv>
#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include "relieforge/error.hpp"
#include "relieforge/stl.hpp"

namespace relieforge {
namespace {

using FloatBits = std::array<std::uint32_t, 3>;

struct BitsHash {
  std::size_t operator()(const FloatBits& b) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto w : b) h = (h ^ w) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }
};

struct RawFacet {
  std::array<float, 3> normal;
  std::array<std::array<float, 3>, 3> v;
};

TriangleMesh build_mesh(const std::vector<RawFacet>& facets) {
  TriangleMesh m;
  std::unordered_map<FloatBits, std::uint32_t, BitsHash> index;
  m.triangles.reserve(facets.size());
  m.normals.reserve(facets.size());
  for (const auto& f : facets) {
    Triangle t{};
    for (int k = 0; k < 3; ++k) {
      const FloatBits key = {std::bit_cast<std::uint32_t>(f.v[k][0]),
                             std::bit_cast<std::uint32_t>(f.v[k][1]),
                             std::bit_cast<std::uint32_t>(f.v[k][2])};
      auto [it, inserted] =
          index.try_emplace(key, static_cast<std::uint32_t>(m.vertices.size()));
      if (inserted) m.vertices.push_back({f.v[k][0], f.v[k][1], f.v[k][2]});
      t[k] = it->second;
    }
    m.triangles.push_back(t);
    m.normals.push_back({f.normal[0], f.normal[1], f.normal[2]});
  }
  return m;
}

std::uint32_t le32(std::span<const std::uint8_t> b, std::size_t at) {
  return std::uint32_t{b[at]} | (std::uint32_t{b[at + 1]} << 8) |
         (std::uint32_t{b[at + 2]} << 16) | (std::uint32_t{b[at + 3]} << 24);
}

float le_float(std::span<const std::uint8_t> b, std::size_t at) {
  return std::bit_cast<float>(le32(b, at));
}

std::vector<RawFacet> parse_binary(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 84) {
    throw Error(ErrorCode::kStlTruncated,
                "STL: binary file shorter than 84-byte header (" +
                    std::to_string(bytes.size()) + " bytes)",
                bytes.size());
  }
  const std::uint64_t count = le32(bytes, 80);
  const std::uint64_t expected = 84 + 50 * count;
  if (bytes.size() != expected) {
    throw Error(ErrorCode::kStlTruncated,
                "STL: binary length " + std::to_string(bytes.size()) +
                    " does not match 84 + 50*" + std::to_string(count) + " = " +
                    std::to_string(expected),
                bytes.size());
  }
  std::vector<RawFacet> facets(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < facets.size(); ++i) {
    const std::size_t at = 84 + 50 * i;
    auto& f = facets[i];
    for (int k = 0; k < 3; ++k) f.normal[k] = le_float(bytes, at + 4 * k);
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        f.v[j][k] = le_float(bytes, at + 12 + 12 * j + 4 * k);
        if (!std::isfinite(f.v[j][k])) {
          throw Error(ErrorCode::kStlParse,
                      "STL: non-finite vertex coordinate in facet " + std::to_string(i),
                      at);
        }
      }
    }
  }
  return facets;
}

class AsciiParser {
 public:
  explicit AsciiParser(std::string_view text) : text_(text) {}

  std::vector<RawFacet> parse() {
    next_line();
    if (tokens_.empty() || tokens_[0] != "solid") fail("expected 'solid'");
    std::vector<RawFacet> facets;
    for (;;) {
      next_line();
      if (tokens_.empty()) fail("unexpected end of file (missing 'endsolid')");
      if (tokens_[0] == "endsolid") break;
      facets.push_back(facet());
    }
    if (next_line()) fail("unexpected content after 'endsolid'");
    return facets;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kStlParse,
                "STL: ASCII parse error at line " + std::to_string(line_no_) + ": " + what,
                line_no_);
  }

  // Advances to the next non-blank line; false at end of input.
  bool next_line() {
    tokens_.clear();
    while (pos_ < text_.size()) {
      const auto nl = text_.find('\n', pos_);
      const auto end = nl == std::string_view::npos ? text_.size() : nl;
      const std::string_view line = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++line_no_;
      split(line);
      if (!tokens_.empty()) return true;
    }
    return false;
  }

  void split(std::string_view line) {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > start) tokens_.push_back(line.substr(start, i - start));
    }
  }

  void expect_line(std::initializer_list<std::string_view> words) {
    next_line();
    if (tokens_.size() != words.size()) fail("expected '" + join(words) + "'");
    std::size_t k = 0;
    for (auto w : words) {
      if (tokens_[k++] != w) fail("expected '" + join(words) + "'");
    }
  }

  static std::string join(std::initializer_list<std::string_view> words) {
    std::string s;
    for (auto w : words) {
      if (!s.empty()) s += ' ';
      s += w;
    }
    return s;
  }

  float number(std::size_t k) const {
    const std::string_view tok = tokens_[k];
    float v = 0.0f;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
      fail("invalid number '" + std::string(tok) + "'");
    }
    return v;
  }

  RawFacet facet() {
    RawFacet f{};
    if (tokens_.size() != 5 || tokens_[0] != "facet" || tokens_[1] != "normal") {
      fail("expected 'facet normal nx ny nz'");
    }
    for (int k = 0; k < 3; ++k) f.normal[k] = number(2 + k);
    expect_line({"outer", "loop"});
    for (auto& v : f.v) {
      next_line();
      if (tokens_.size() != 4 || tokens_[0] != "vertex") fail("expected 'vertex x y z'");
      for (int k = 0; k < 3; ++k) v[k] = number(1 + k);
    }
    expect_line({"endloop"});
    expect_line({"endfacet"});
    return f;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
  std::vector<std::string_view> tokens_;
};

bool starts_with_solid(std::span<const std::uint8_t> bytes) {
  constexpr std::string_view kSolid = "solid";
  if (bytes.size() < kSolid.size()) return false;
  return std::equal(kSolid.begin(), kSolid.end(), bytes.begin());
}

}  // namespace

TriangleMesh read_stl(std::span<const std::uint8_t> bytes) {
  if (starts_with_solid(bytes)) {
    const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
    try {
      return build_mesh(AsciiParser(text).parse());
    } catch (const Error&) {
      // Some binary exporters start their header with "solid"; accept those
      // when the length law holds, otherwise the ASCII diagnosis stands.
      if (bytes.size() >= 84 && bytes.size() == 84 + 50 * std::uint64_t{le32(bytes, 80)}) {
        return build_mesh(parse_binary(bytes));
      }
      throw;
    }
  }
  return build_mesh(parse_binary(bytes));
}

}  // namespace relieforge
