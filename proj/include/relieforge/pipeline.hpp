#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "relieforge/heightfield.hpp"
#include "relieforge/mesh.hpp"
#include "relieforge/transfer.hpp"

namespace relieforge {

enum class StlFormat { kBinary, kAscii };

/// Defaults reproduce the reference relief: x4 scale over an 80 x 28 mm
/// plate, no padding.
struct PipelineConfig {
  std::filesystem::path input_path;
  std::filesystem::path output_path;
  std::optional<std::string> preset;  // exactly one of preset / transfer_path
  std::optional<std::filesystem::path> transfer_path;
  double scale = 4.0;
  PhysicalExtent extent{80.0, 28.0};
  bool pad = false;
  double pad_value = 0.0;
  bool mirror_x = false;
  StlFormat format = StlFormat::kBinary;
  double base_z = 0.0;
  double min_feature = 0.001;
  unsigned threads = 1;
  std::optional<std::filesystem::path> report_path;
};

struct RunReport {
  MeshReport mesh;
  std::size_t input_width = 0;
  std::size_t input_height = 0;
  std::size_t grid_rows = 0;
  std::size_t grid_cols = 0;
  std::string transfer_name;
  double height_min = 0.0;  // top surface, mm
  double height_max = 0.0;
  /// Volume of the mesh as stored in the STL (binary32 coordinates); equals
  /// what `inspect` reports for the written file.
  std::optional<double> stl_volume;
  std::size_t degenerate = 0;
  bool padded = false;
  std::vector<std::string> warnings;
  double elapsed_ms = 0.0;
};

/// Everything convert computes short of writing files.
struct PipelineResult {
  HeightGrid grid;
  SolidResult solid;
  RunReport report;
};

/// Resolves preset/transfer_path (neither given means the default preset).
TransferFunction resolve_transfer(const PipelineConfig& cfg);

/// decode -> grayscale -> transfer x scale -> orient -> pad -> extent -> solid
/// -> validate.
PipelineResult run_pipeline(const PipelineConfig& cfg);

/// Serialized STL for a result, in the configured format.
std::vector<std::uint8_t> serialize_stl(const TriangleMesh& mesh, StlFormat format,
                                        const std::string& solid_name);

/// run_pipeline, then writes the STL (and report file when configured).
RunReport convert(const PipelineConfig& cfg);

/// Whether a convert report meets the success contract: watertight with no
/// dropped triangles, or padded (where dropped wall triangles are expected).
bool convert_succeeded(const RunReport& report);

/// Parses an STL file and validates it.
RunReport inspect(const std::filesystem::path& path);

/// Height preview as P5: round(255 * (h - min) / (max - min)), top row of
/// the image = far edge (max y) of the relief; constant grids map to 0.
std::vector<std::uint8_t> preview_pgm(const HeightGrid& grid);

/// run_pipeline, then writes preview_pgm to out_path.
RunReport preview(const PipelineConfig& cfg, const std::filesystem::path& out_path);

/// Single JSON object with keys vertices, triangles, edges, euler,
/// watertight, volume_mm3, area_mm2, bbox_mm, degenerate, warnings, plus
/// run metadata. Keys are sorted; elapsed_ms is emitted only on request.
std::string report_json(const RunReport& report, bool include_timing = true);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace relieforge
