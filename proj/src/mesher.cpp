#include <cmath>
#include <limits>
#include <string>

#include "parallel.hpp"
#include "relieforge/error.hpp"
#include "relieforge/mesh.hpp"

namespace relieforge {
namespace {

void check_not_inverted(const HeightGrid& g, double base_z) {
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) {
      if (g.height(r, c) < base_z) {
        throw Error(ErrorCode::kInvertedSolid,
                    "height " + std::to_string(g.height(r, c)) + " at (" +
                        std::to_string(r) + "," + std::to_string(c) +
                        ") lies below base_z " + std::to_string(base_z));
      }
    }
  }
}

void check_vertex_budget(std::size_t count) {
  if (count > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "grid too large for 32-bit vertex indices");
  }
}

// Collects triangles, dropping those whose area is below the threshold or
// that repeat a vertex.
class TriangleSink {
 public:
  TriangleSink(const std::vector<Vec3>& vertices, double min_area)
      : vertices_(vertices), min_area_(min_area) {}

  void add(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    if (a == b || b == c || a == c) {
      ++degenerate_;
      return;
    }
    const Vec3 n = cross(vertices_[b] - vertices_[a], vertices_[c] - vertices_[a]);
    if (0.5 * std::sqrt(dot(n, n)) < min_area_) {
      ++degenerate_;
      return;
    }
    triangles_.push_back({a, b, c});
  }

  void skip(std::size_t n) { degenerate_ += n; }

  std::vector<Triangle>& triangles() { return triangles_; }
  std::size_t degenerate() const { return degenerate_; }

 private:
  const std::vector<Vec3>& vertices_;
  double min_area_;
  std::vector<Triangle> triangles_;
  std::size_t degenerate_ = 0;
};

void fill_normals(TriangleMesh& m) {
  m.normals.clear();
  m.normals.reserve(m.triangles.size());
  for (const auto& t : m.triangles) {
    m.normals.push_back(
        winding_normal(m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]));
  }
}

// Removes vertices no triangle uses, keeping the survivors' relative order.
void drop_unreferenced(TriangleMesh& m) {
  std::vector<std::uint32_t> remap(m.vertices.size(), 0);
  for (const auto& t : m.triangles) {
    for (auto i : t) remap[i] = 1;
  }
  std::uint32_t next = 0;
  std::vector<Vec3> kept;
  kept.reserve(m.vertices.size());
  for (std::size_t i = 0; i < remap.size(); ++i) {
    if (remap[i]) {
      remap[i] = next++;
      kept.push_back(m.vertices[i]);
    }
  }
  if (kept.size() == m.vertices.size()) return;
  for (auto& t : m.triangles) {
    for (auto& i : t) i = remap[i];
  }
  m.vertices = std::move(kept);
}

std::vector<Vec3> grid_vertices(const HeightGrid& g) {
  std::vector<Vec3> v;
  v.reserve(g.rows() * g.cols());
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) {
      v.push_back({g.x_at(c), g.y_at(r), g.height(r, c)});
    }
  }
  return v;
}

}  // namespace

Vec3 winding_normal(Vec3 v0, Vec3 v1, Vec3 v2) {
  const Vec3 n = cross(v1 - v0, v2 - v0);
  const double len = std::sqrt(dot(n, n));
  if (!(len > 0.0)) return {};
  return {n.x / len, n.y / len, n.z / len};
}

TriangleMesh tessellate_top(const HeightGrid& g, unsigned threads) {
  check_vertex_budget(g.rows() * g.cols());
  TriangleMesh m;
  m.vertices = grid_vertices(g);
  const std::size_t cols = g.cols();
  const std::size_t per_row = 2 * (cols - 1);
  m.triangles.resize((g.rows() - 1) * per_row);
  detail::parallel_chunks(g.rows() - 1, threads, [&](std::size_t r0, std::size_t r1) {
    for (std::size_t r = r0; r < r1; ++r) {
      for (std::size_t c = 0; c + 1 < cols; ++c) {
        const auto v00 = static_cast<std::uint32_t>(r * cols + c);
        const auto v01 = v00 + 1;
        const auto v10 = static_cast<std::uint32_t>(v00 + cols);
        const auto v11 = v10 + 1;
        const std::size_t at = r * per_row + 2 * c;
        m.triangles[at] = {v00, v01, v11};
        m.triangles[at + 1] = {v00, v11, v10};
      }
    }
  });
  fill_normals(m);
  return m;
}

SolidResult close_solid(const HeightGrid& g, const SolidOptions& opts) {
  check_not_inverted(g, opts.base_z);
  const std::size_t rows = g.rows();
  const std::size_t cols = g.cols();
  check_vertex_budget(2 * rows * cols);

  TriangleMesh m;
  m.vertices = grid_vertices(g);

  // Top and base samples differ in (x, y) unless they share (r, c), and then
  // coincide exactly when the height equals base_z. Exact-coordinate
  // deduplication therefore reduces to this per-sample test.
  std::vector<std::uint32_t> base_index(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t i = r * cols + c;
      if (g.height(r, c) == opts.base_z) {
        base_index[i] = static_cast<std::uint32_t>(i);
      } else {
        base_index[i] = static_cast<std::uint32_t>(m.vertices.size());
        m.vertices.push_back({g.x_at(c), g.y_at(r), opts.base_z});
      }
    }
  }
  const auto top = [cols](std::size_t r, std::size_t c) {
    return static_cast<std::uint32_t>(r * cols + c);
  };
  const auto base = [&](std::size_t r, std::size_t c) { return base_index[r * cols + c]; };
  const auto on_base = [&](std::size_t r, std::size_t c) {
    return g.height(r, c) == opts.base_z;
  };

  const double min_area = opts.min_feature * opts.min_feature * 1e-6;
  const std::size_t cell_rows = rows - 1;

  // One sink per cell row keeps emission order independent of threading.
  std::vector<TriangleSink> top_rows, base_rows;
  top_rows.reserve(cell_rows);
  base_rows.reserve(cell_rows);
  for (std::size_t r = 0; r < cell_rows; ++r) {
    top_rows.emplace_back(m.vertices, min_area);
    base_rows.emplace_back(m.vertices, min_area);
  }
  detail::parallel_chunks(cell_rows, opts.threads, [&](std::size_t r0, std::size_t r1) {
    for (std::size_t r = r0; r < r1; ++r) {
      for (std::size_t c = 0; c + 1 < cols; ++c) {
        // A top triangle lying entirely on base_z shares its vertices with
        // the base triangle below it; the pair encloses nothing.
        if (on_base(r, c) && on_base(r, c + 1) && on_base(r + 1, c + 1)) {
          top_rows[r].skip(2);
        } else {
          top_rows[r].add(top(r, c), top(r, c + 1), top(r + 1, c + 1));
          base_rows[r].add(base(r, c), base(r + 1, c + 1), base(r, c + 1));
        }
        if (on_base(r, c) && on_base(r + 1, c + 1) && on_base(r + 1, c)) {
          top_rows[r].skip(2);
        } else {
          top_rows[r].add(top(r, c), top(r + 1, c + 1), top(r + 1, c));
          base_rows[r].add(base(r, c), base(r + 1, c), base(r + 1, c + 1));
        }
      }
    }
  });

  SolidResult result;
  for (auto* rows_of : {&top_rows, &base_rows}) {
    for (auto& sink : *rows_of) {
      m.triangles.insert(m.triangles.end(), sink.triangles().begin(),
                         sink.triangles().end());
      result.degenerate += sink.degenerate();
    }
  }

  // Perimeter, counter-clockwise seen from +Z: front (y = 0), right, back,
  // left. Top triangles traverse each boundary edge p -> q in this
  // direction, so the wall quad runs q -> p along the top.
  std::vector<std::pair<std::size_t, std::size_t>> loop;
  loop.reserve(2 * (rows + cols));
  for (std::size_t c = 0; c + 1 < cols; ++c) loop.emplace_back(0, c);
  for (std::size_t r = 0; r + 1 < rows; ++r) loop.emplace_back(r, cols - 1);
  for (std::size_t c = cols - 1; c > 0; --c) loop.emplace_back(rows - 1, c);
  for (std::size_t r = rows - 1; r > 0; --r) loop.emplace_back(r, 0);

  TriangleSink walls(m.vertices, min_area);
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const auto [pr, pc] = loop[i];
    const auto [qr, qc] = loop[(i + 1) % loop.size()];
    walls.add(top(qr, qc), top(pr, pc), base(pr, pc));
    walls.add(top(qr, qc), base(pr, pc), base(qr, qc));
  }
  m.triangles.insert(m.triangles.end(), walls.triangles().begin(),
                     walls.triangles().end());
  result.degenerate += walls.degenerate();

  drop_unreferenced(m);
  fill_normals(m);
  result.mesh = std::move(m);
  return result;
}

double analytic_volume(const HeightGrid& g, double base_z) {
  check_not_inverted(g, base_z);
  const double half_cell = g.dx() * g.dy() / 2.0;
  double volume = 0.0;
  for (std::size_t r = 0; r + 1 < g.rows(); ++r) {
    for (std::size_t c = 0; c + 1 < g.cols(); ++c) {
      const double z00 = g.height(r, c);
      const double z01 = g.height(r, c + 1);
      const double z10 = g.height(r + 1, c);
      const double z11 = g.height(r + 1, c + 1);
      volume += half_cell * ((z00 + z01 + z11) / 3.0 - base_z);
      volume += half_cell * ((z00 + z11 + z10) / 3.0 - base_z);
    }
  }
  return volume;
}

TriangleMesh narrowed_to_binary32(const TriangleMesh& m) {
  TriangleMesh out = m;
  for (auto& v : out.vertices) {
    v = {static_cast<float>(v.x), static_cast<float>(v.y), static_cast<float>(v.z)};
  }
  fill_normals(out);
  return out;
}

}  // namespace relieforge
