// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "relieforge/error.hpp"
#include "relieforge/pipeline.hpp"
#include "relieforge/stl.hpp"
#include "relieforge/transfer.hpp"
#include "test_support.hpp"

namespace {

using namespace relieforge;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr double kTransferTol = 1e-12;
constexpr double kTransferBudgetMs = 1.0;
constexpr double kConvertBudgetMs = 1000.0;
constexpr int kRandomGrids = 200;
constexpr double kVolumeRelTol = 1e-9;
constexpr double kPropertyBudgetMs = 30000.0;

double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string stl_bytes(const TriangleMesh& m) {
  std::ostringstream out;
  write_binary_stl(m, out);
  return out.str();
}

fs::path write_fixture(const fs::path& dir, const std::string& name, std::string_view text) {
  const auto p = dir / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

Outcome transfer_constants() {
  Outcome o;
  const auto tf = preset_jdrf();
  const std::pair<double, double> cases[] = {{1.0, 0.3},    {0.95, 0.3},  {0.0, 1.3},
                                             {0.2, 1.3},    {0.25, 1.175}, {0.5, 1.05},
                                             {0.9, 0.85}};
  const auto start = Clock::now();
  double got[std::size(cases)];
  for (std::size_t i = 0; i < std::size(cases); ++i) got[i] = tf.evaluate(cases[i].first);
  const double ms = ms_since(start);
  for (std::size_t i = 0; i < std::size(cases); ++i) {
    o.require(std::fabs(got[i] - cases[i].second) <= kTransferTol,
              "f(" + fmt(cases[i].first) + ") = " + fmt(got[i]));
  }
  o.require(ms < kTransferBudgetMs, "took " + fmt(ms) + " ms");
  if (o.pass) o.detail = "7 points within 1e-12 in " + fmt(ms) + " ms";
  return o;
}

Outcome reference_heights(const fs::path& dir) {
  Outcome o;
  PipelineConfig cfg;
  cfg.input_path = write_fixture(dir, "logo.pgm", testing::kLogo4x4);
  cfg.output_path = dir / "logo.stl";
  const auto start = Clock::now();
  const auto rep = convert(cfg);
  const double ms = ms_since(start);
  const auto& m = rep.mesh;
  o.require(m.bbox_min == Vec3{0.0, 0.0, 0.0}, "bbox min not at origin");
  o.require(m.bbox_max.x == 80.0 && m.bbox_max.y == 28.0 && m.bbox_max.z == 5.2,
            "bbox max " + fmt(m.bbox_max.x) + " " + fmt(m.bbox_max.y) + " " +
                fmt(m.bbox_max.z));
  o.require(rep.height_min == 1.2, "top minimum " + fmt(rep.height_min));
  o.require(m.watertight, "not watertight");
  o.require(ms < kConvertBudgetMs, "took " + fmt(ms) + " ms");
  if (o.pass) o.detail = "bbox 80 x 28 x 5.2, top min 1.2, " + fmt(ms) + " ms";
  return o;
}

void property_suite(Outcome& watertight, Outcome& volume) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> side(2, 40);
  double worst = 0.0;
  const auto start = Clock::now();
  for (int i = 0; i < kRandomGrids; ++i) {
    const std::size_t rows = side(rng), cols = side(rng);
    const auto g = testing::random_grid(rng, rows, cols);
    const auto solid = close_solid(g);
    const auto rep = validate(solid.mesh);
    const std::string tag = "grid " + std::to_string(i) + " (" + std::to_string(rows) + "x" +
                            std::to_string(cols) + ")";
    watertight.require(rep.watertight, tag + " not watertight");
    watertight.require(rep.euler_characteristic == 2, tag + " euler " +
                                                          std::to_string(rep.euler_characteristic));
    watertight.require(solid.degenerate == 0 && rep.degenerate_count == 0,
                       tag + " has degenerate triangles");
    const double expected = analytic_volume(g);
    const double rel = std::fabs(rep.signed_volume - expected) / expected;
    worst = std::max(worst, rel);
    volume.require(rel <= kVolumeRelTol, tag + " relative error " + fmt(rel));
  }
  const double ms = ms_since(start);
  watertight.require(ms < kPropertyBudgetMs, "took " + fmt(ms) + " ms");
  if (watertight.pass) watertight.detail = "200 grids closed, euler 2, in " + fmt(ms) + " ms";
  if (volume.pass) volume.detail = "worst relative error " + fmt(worst);
}

Outcome box_case() {
  Outcome o;
  auto check = [&](const HeightGrid& g, double h) {
    const auto res = close_solid(g);
    const auto rep = validate(res.mesh);
    const double expected = g.dx() * g.dy() * h;
    const std::string tag = "h=" + fmt(h) + " dx=" + fmt(g.dx()) + " dy=" + fmt(g.dy());
    o.require(rep.vertex_count == 8, tag + " vertices " + std::to_string(rep.vertex_count));
    o.require(rep.triangle_count == 12, tag + " triangles " + std::to_string(rep.triangle_count));
    o.require(rep.euler_characteristic == 2, tag + " euler");
    o.require(rep.signed_volume == expected,
              tag + " volume " + fmt(rep.signed_volume) + " != " + fmt(expected));
  };
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> hd(0.001, 100.0);
  int count = 0;
  for (double h : {0.5, 1.0, 1.2, 2.5, 5.2, 7.0}) {
    check(testing::constant_grid(2, 2, h, {1.0, 1.0}), h);
    ++count;
  }
  for (int i = 0; i < 200; ++i, ++count) {
    const double h = hd(rng);
    check(testing::constant_grid(2, 2, h, {1.0, 1.0}), h);
  }
  std::uniform_int_distribution<int> span(1, 300);
  for (int i = 0; i < 200; ++i, ++count) {
    const double h = hd(rng);
    const PhysicalExtent e{static_cast<double>(span(rng)), static_cast<double>(span(rng))};
    check(testing::constant_grid(2, 2, h, e), h);
  }
  check(testing::constant_grid(2, 2, 5.2, {80.0, 28.0}), 5.2);
  ++count;
  if (o.pass) o.detail = std::to_string(count) + " boxes, volume bitwise dx*dy*h";
  return o;
}

Outcome stl_law() {
  Outcome o;
  const auto box = close_solid(testing::constant_grid(2, 2, 5.2, {80.0, 28.0})).mesh;
  const auto box_bytes = stl_bytes(box);
  o.require(box_bytes.size() == 684, "box file " + std::to_string(box_bytes.size()) + " bytes");
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::size_t> side(2, 30);
  for (int i = 0; i < 50; ++i) {
    const auto m = close_solid(testing::random_grid(rng, side(rng), side(rng))).mesh;
    const auto bytes = stl_bytes(m);
    o.require(bytes.size() == 84 + 50 * m.triangles.size(), "size law broken");
    const std::vector<std::uint8_t> raw(bytes.begin(), bytes.end());
    const auto back = read_stl(raw);
    const auto narrowed = narrowed_to_binary32(m);
    bool same = back.triangles.size() == m.triangles.size();
    for (std::size_t t = 0; same && t < m.triangles.size(); ++t) {
      for (int k = 0; k < 3; ++k) {
        same = same && back.vertices[back.triangles[t][k]] ==
                           narrowed.vertices[narrowed.triangles[t][k]];
      }
    }
    o.require(same, "round trip changed coordinates");
    o.require(stl_bytes(back) == bytes, "re-serialized bytes differ");
  }
  if (o.pass) o.detail = "box 684 bytes, 50 meshes obey 84 + 50T and round-trip bitwise";
  return o;
}

Outcome determinism(const fs::path& dir) {
  Outcome o;
  std::string reference;
  const auto input = write_fixture(dir, "grad.pgm", testing::kLogo4x4Gradient);
  int runs = 0;
  for (unsigned threads : {1u, 1u, 2u, 4u, 8u}) {
    PipelineConfig cfg;
    cfg.input_path = input;
    cfg.output_path = dir / ("det" + std::to_string(runs++) + ".stl");
    cfg.threads = threads;
    convert(cfg);
    const auto bytes = read_file(cfg.output_path);
    const std::string s(bytes.begin(), bytes.end());
    if (reference.empty()) reference = s;
    o.require(s == reference, "threads=" + std::to_string(threads) + " output differs");
  }
  if (o.pass) o.detail = std::to_string(runs) + " runs (threads 1,1,2,4,8) byte-identical";
  return o;
}

Outcome pad_compat(const fs::path& dir) {
  Outcome o;
  PipelineConfig cfg;
  cfg.input_path = write_fixture(dir, "logo.pgm", testing::kLogo4x4);
  cfg.output_path = dir / "pad.stl";
  cfg.pad = true;
  const auto plain = run_pipeline([&] {
    auto c = cfg;
    c.pad = false;
    return c;
  }());
  const auto result = run_pipeline(cfg);
  const auto& g = result.grid;
  o.require(g.rows() == plain.grid.rows() + 2 && g.cols() == plain.grid.cols() + 2,
            "grid " + std::to_string(g.rows()) + "x" + std::to_string(g.cols()));
  bool border_zero = true;
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) {
      const bool edge = r == 0 || c == 0 || r + 1 == g.rows() || c + 1 == g.cols();
      if (edge) border_zero = border_zero && g.height(r, c) == 0.0;
    }
  }
  o.require(border_zero, "border heights not 0");
  const auto& rep = result.report;
  o.require(rep.degenerate > 0, "no degenerate triangles counted");
  bool flagged = false;
  for (const auto& w : rep.warnings) flagged = flagged || w.find("degenerate") != std::string::npos;
  o.require(flagged, "report does not flag degenerate triangles");
  o.require(rep.mesh.watertight && rep.mesh.euler_characteristic == 2,
            "padded mesh not a closed manifold");
  o.require(convert_succeeded(rep), "padded convert reports failure");
  if (o.pass) {
    o.detail = std::to_string(g.rows()) + "x" + std::to_string(g.cols()) + " grid, " +
               std::to_string(rep.degenerate) + " degenerate skipped and flagged";
  }
  return o;
}

Outcome guarded(const std::function<Outcome()>& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

int main() {
  const auto dir = testing::scratch_dir("acceptance");
  Outcome watertight, volume;
  try {
    property_suite(watertight, volume);
  } catch (const std::exception& e) {
    watertight = volume = {false, std::string("exception: ") + e.what()};
  }
  const std::pair<const char*, Outcome> results[] = {
      {"1 transfer constants", guarded(transfer_constants)},
      {"2 reference heights and extents", guarded([&] { return reference_heights(dir); })},
      {"3 watertight property suite", watertight},
      {"4 volume oracle", volume},
      {"5 box case", guarded(box_case)},
      {"6 STL byte law", guarded(stl_law)},
      {"7 determinism", guarded([&] { return determinism(dir); })},
      {"8 pad compatibility", guarded([&] { return pad_compat(dir); })},
  };
  int failed = 0;
  for (const auto& [name, o] : results) {
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/8 criteria passed\n", 8 - failed);
  fs::remove_all(dir);
  return failed == 0 ? 0 : 1;
}
