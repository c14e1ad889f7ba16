#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "relieforge/mesh.hpp"

namespace relieforge {
namespace {

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    carry += std::fabs(sum) >= std::fabs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }

  // (sum + carry) / d with one correction step on the quotient.
  double divided_by(double d) const {
    const double hi = sum + carry;
    const double lo = carry - (hi - sum);
    const double q = hi / d;
    const double r = std::fma(-d, q, hi);
    return q + (r + lo) / d;
  }
};

struct EdgeUse {
  std::uint32_t total = 0;
  std::uint32_t forward = 0;  // traversed low index -> high index
};

}  // namespace

MeshReport validate(const TriangleMesh& m) {
  MeshReport rep;
  rep.vertex_count = m.vertices.size();
  rep.triangle_count = m.triangles.size();

  if (!m.vertices.empty()) {
    rep.bbox_min = rep.bbox_max = m.vertices.front();
    for (const auto& v : m.vertices) {
      rep.bbox_min = {std::min(rep.bbox_min.x, v.x), std::min(rep.bbox_min.y, v.y),
                      std::min(rep.bbox_min.z, v.z)};
      rep.bbox_max = {std::max(rep.bbox_max.x, v.x), std::max(rep.bbox_max.y, v.y),
                      std::max(rep.bbox_max.z, v.z)};
    }
  }

  std::unordered_map<std::uint64_t, EdgeUse> edges;
  edges.reserve(m.triangles.size() * 2);
  CompensatedSum six_volume;
  double twice_area = 0.0;
  const std::size_t n = m.vertices.size();
  for (const auto& t : m.triangles) {
    if (t[0] >= n || t[1] >= n || t[2] >= n) {
      ++rep.degenerate_count;
      continue;
    }
    const Vec3 v0 = m.vertices[t[0]];
    const Vec3 v1 = m.vertices[t[1]];
    const Vec3 v2 = m.vertices[t[2]];
    six_volume.add(dot(v0, cross(v1, v2)));
    const Vec3 nrm = cross(v1 - v0, v2 - v0);
    const double len = std::sqrt(dot(nrm, nrm));
    twice_area += len;
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2] || !(len > 0.0)) {
      ++rep.degenerate_count;
    }
    for (int k = 0; k < 3; ++k) {
      const std::uint32_t a = t[k];
      const std::uint32_t b = t[(k + 1) % 3];
      if (a == b) continue;
      const std::uint64_t key = (std::uint64_t{std::min(a, b)} << 32) | std::max(a, b);
      auto& use = edges[key];
      ++use.total;
      if (a < b) ++use.forward;
    }
  }
  rep.signed_volume = six_volume.divided_by(6.0);
  rep.surface_area = twice_area / 2.0;
  rep.edge_count = edges.size();
  for (const auto& [key, use] : edges) {
    if (use.total == 1) {
      ++rep.boundary_edges;
    } else if (use.total != 2 || use.forward != 1) {
      ++rep.nonmanifold_edges;
    }
  }
  rep.watertight = !m.triangles.empty() && rep.boundary_edges == 0 &&
                   rep.nonmanifold_edges == 0;
  rep.euler_characteristic = static_cast<long long>(rep.vertex_count) -
                             static_cast<long long>(rep.edge_count) +
                             static_cast<long long>(rep.triangle_count);
  return rep;
}

}  // namespace relieforge
