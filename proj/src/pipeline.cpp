#include "relieforge/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "relieforge/error.hpp"
#include "relieforge/image.hpp"
#include "relieforge/stl.hpp"

namespace relieforge {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

nlohmann::json vec_json(Vec3 v) { return nlohmann::json::array({v.x, v.y, v.z}); }

}  // namespace

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kReadFailure, "cannot open '" + path.string() + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kReadFailure, "read failed: '" + path.string() + "'");
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kWriteFailure, "cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::kWriteFailure, "write failed: '" + path.string() + "'");
}

TransferFunction resolve_transfer(const PipelineConfig& cfg) {
  if (cfg.preset && cfg.transfer_path) {
    throw Error(ErrorCode::kInvalidArgument, "give either a preset or a transfer file, not both");
  }
  if (cfg.transfer_path) {
    const auto bytes = read_file(*cfg.transfer_path);
    const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
    return parse_transfer_spec(text, cfg.transfer_path->filename().string());
  }
  return preset_by_name(cfg.preset.value_or("jdrf-relief"));
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  const auto start = Clock::now();
  const ScaleFactor scale(cfg.scale);
  const TransferFunction tf = resolve_transfer(cfg);

  const GrayImage gray = to_grayscale(decode_image(read_file(cfg.input_path)));
  ScalarGrid grid =
      grid_from_image(apply(tf, gray, scale, cfg.threads), cfg.mirror_x);
  if (cfg.pad) grid = pad_border(grid, cfg.pad_value, 1);
  auto [height_grid, clamped] = assign_extent(grid, cfg.extent);

  SolidOptions opts;
  opts.base_z = cfg.base_z;
  opts.min_feature = cfg.min_feature;
  opts.threads = cfg.threads;
  SolidResult solid = close_solid(height_grid, opts);

  RunReport rep;
  rep.mesh = validate(solid.mesh);
  rep.input_width = gray.width;
  rep.input_height = gray.height;
  rep.grid_rows = height_grid.rows();
  rep.grid_cols = height_grid.cols();
  rep.transfer_name = tf.name();
  const auto [lo, hi] =
      std::minmax_element(height_grid.heights().begin(), height_grid.heights().end());
  rep.height_min = *lo;
  rep.height_max = *hi;
  rep.degenerate = solid.degenerate;
  rep.padded = cfg.pad;
  if (clamped > 0) {
    rep.warnings.push_back(std::to_string(clamped) + " negative heights clamped to 0");
  }
  if (solid.degenerate > 0) {
    rep.warnings.push_back(std::to_string(solid.degenerate) +
                           " degenerate triangles skipped" +
                           (cfg.pad ? " (expected with zero-height padding)" : ""));
  }
  if (!rep.mesh.watertight) rep.warnings.push_back("mesh is not watertight");
  rep.elapsed_ms = ms_since(start);
  return {std::move(height_grid), std::move(solid), std::move(rep)};
}

std::vector<std::uint8_t> serialize_stl(const TriangleMesh& mesh, StlFormat format,
                                        const std::string& solid_name) {
  std::ostringstream out(std::ios::binary);
  if (format == StlFormat::kBinary) {
    write_binary_stl(mesh, out);
  } else {
    write_ascii_stl(mesh, solid_name, out);
  }
  const std::string s = std::move(out).str();
  return {s.begin(), s.end()};
}

bool convert_succeeded(const RunReport& report) {
  if (!report.mesh.watertight) return false;
  return report.degenerate == 0 || report.padded;
}

RunReport convert(const PipelineConfig& cfg) {
  const auto start = Clock::now();
  PipelineResult result = run_pipeline(cfg);
  const auto bytes = serialize_stl(result.solid.mesh, cfg.format,
                                   cfg.input_path.stem().string());
  result.report.stl_volume = validate(read_stl(bytes)).signed_volume;
  write_file(cfg.output_path, bytes);
  result.report.elapsed_ms = ms_since(start);
  if (cfg.report_path) {
    const std::string json = report_json(result.report) + "\n";
    write_file(*cfg.report_path,
               {reinterpret_cast<const std::uint8_t*>(json.data()), json.size()});
  }
  return result.report;
}

RunReport inspect(const std::filesystem::path& path) {
  const auto start = Clock::now();
  const TriangleMesh mesh = read_stl(read_file(path));
  RunReport rep;
  rep.mesh = validate(mesh);
  rep.degenerate = rep.mesh.degenerate_count;
  if (!rep.mesh.watertight) {
    rep.warnings.push_back("mesh is not watertight: " +
                           std::to_string(rep.mesh.boundary_edges) + " boundary edges, " +
                           std::to_string(rep.mesh.nonmanifold_edges) +
                           " non-manifold edges");
  }
  rep.elapsed_ms = ms_since(start);
  return rep;
}

std::vector<std::uint8_t> preview_pgm(const HeightGrid& grid) {
  const auto& h = grid.heights();
  const auto [lo_it, hi_it] = std::minmax_element(h.begin(), h.end());
  const double lo = *lo_it;
  const double span = *hi_it - lo;
  std::vector<std::uint8_t> levels;
  levels.reserve(h.size());
  for (std::size_t img_r = 0; img_r < grid.rows(); ++img_r) {
    const std::size_t r = grid.rows() - 1 - img_r;
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      const double t = span > 0.0 ? (grid.height(r, c) - lo) / span : 0.0;
      levels.push_back(static_cast<std::uint8_t>(std::lround(255.0 * t)));
    }
  }
  return encode_pgm(grid.cols(), grid.rows(), levels);
}

RunReport preview(const PipelineConfig& cfg, const std::filesystem::path& out_path) {
  PipelineResult result = run_pipeline(cfg);
  write_file(out_path, preview_pgm(result.grid));
  return result.report;
}

std::string report_json(const RunReport& r, bool include_timing) {
  nlohmann::json j;
  j["vertices"] = r.mesh.vertex_count;
  j["triangles"] = r.mesh.triangle_count;
  j["edges"] = r.mesh.edge_count;
  j["euler"] = r.mesh.euler_characteristic;
  j["watertight"] = r.mesh.watertight;
  j["boundary_edges"] = r.mesh.boundary_edges;
  j["nonmanifold_edges"] = r.mesh.nonmanifold_edges;
  j["volume_mm3"] = r.mesh.signed_volume;
  j["area_mm2"] = r.mesh.surface_area;
  j["bbox_mm"] = {{"min", vec_json(r.mesh.bbox_min)}, {"max", vec_json(r.mesh.bbox_max)}};
  j["degenerate"] = r.degenerate;
  j["warnings"] = r.warnings;
  if (r.grid_rows > 0) {
    j["input"] = {{"width", r.input_width}, {"height", r.input_height}};
    j["grid"] = {{"rows", r.grid_rows}, {"cols", r.grid_cols}};
    j["transfer"] = r.transfer_name;
    j["height_min_mm"] = r.height_min;
    j["height_max_mm"] = r.height_max;
    j["padded"] = r.padded;
  }
  if (r.stl_volume) j["stl_volume_mm3"] = *r.stl_volume;
  if (include_timing) j["elapsed_ms"] = r.elapsed_ms;
  return j.dump();
}

}  // namespace relieforge
