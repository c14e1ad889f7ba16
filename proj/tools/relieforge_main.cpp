// relieforge: turn a grayscale image into a printable relief STL.
//
//   relieforge convert logo.pgm --output logo.stl
//   relieforge inspect logo.stl
//   relieforge preview logo.pgm --output heights.pgm

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "relieforge/error.hpp"
#include "relieforge/pipeline.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInput = 3,
  kGeometry = 4,
  kOutput = 5,
};

int exit_for(relieforge::ErrorCategory category) {
  switch (category) {
    case relieforge::ErrorCategory::kUsage: return kUsage;
    case relieforge::ErrorCategory::kInput: return kInput;
    case relieforge::ErrorCategory::kGeometry: return kGeometry;
    case relieforge::ErrorCategory::kOutput: return kOutput;
  }
  return kInput;
}

void add_pipeline_options(CLI::App& cmd, relieforge::PipelineConfig& cfg,
                          std::string& preset, std::string& transfer) {
  cmd.add_option("input", cfg.input_path, "Input image (PGM P2/P5 or PNG)")->required();
  auto* p = cmd.add_option("--preset", preset, "Named transfer function (jdrf-relief)");
  auto* t = cmd.add_option("--transfer", transfer, "Transfer spec file");
  p->excludes(t);
  cmd.add_option("--scale", cfg.scale, "Height multiplier to mm")->capture_default_str();
  cmd.add_option("--width-mm", cfg.extent.width_mm, "X span in mm")->capture_default_str();
  cmd.add_option("--depth-mm", cfg.extent.depth_mm, "Y span in mm")->capture_default_str();
  cmd.add_flag("--pad", cfg.pad, "Add a one-cell border at --pad-value");
  cmd.add_option("--pad-value", cfg.pad_value, "Border height in mm")->capture_default_str();
  cmd.add_flag("--mirror-x", cfg.mirror_x, "Reverse columns (read from the plate side)");
  cmd.add_option("--base-z", cfg.base_z, "Base plane z in mm")->capture_default_str();
  cmd.add_option("--min-feature", cfg.min_feature,
                 "Triangles under min_feature^2 * 1e-6 mm^2 are dropped")
      ->capture_default_str();
  cmd.add_option("--threads", cfg.threads, "Worker threads for meshing")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
}

void finish_config(relieforge::PipelineConfig& cfg, const std::string& preset,
                   const std::string& transfer) {
  if (!preset.empty()) cfg.preset = preset;
  if (!transfer.empty()) cfg.transfer_path = transfer;
}

void print_summary(const relieforge::RunReport& r) {
  const auto& m = r.mesh;
  std::fprintf(stderr,
               "relieforge: %zu vertices, %zu triangles, V-E+F=%lld, %s, "
               "volume %.6g mm^3, bbox %.6g x %.6g x %.6g mm\n",
               m.vertex_count, m.triangle_count, m.euler_characteristic,
               m.watertight ? "watertight" : "NOT watertight", m.signed_volume,
               m.bbox_max.x - m.bbox_min.x, m.bbox_max.y - m.bbox_min.y,
               m.bbox_max.z - m.bbox_min.z);
  for (const auto& w : r.warnings) std::fprintf(stderr, "relieforge: warning: %s\n", w.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convert grayscale images into watertight relief STL solids"};
  app.require_subcommand(1);

  relieforge::PipelineConfig cfg;
  std::string preset, transfer;
  bool ascii = false;
  std::string report_path;

  auto* convert = app.add_subcommand("convert", "Image to STL");
  add_pipeline_options(*convert, cfg, preset, transfer);
  convert->add_option("--output", cfg.output_path, "Output STL path")->required();
  convert->add_flag("--ascii", ascii, "Write ASCII STL instead of binary");
  convert->add_option("--report", report_path, "Also write the JSON report here");

  std::filesystem::path stl_path;
  auto* inspect = app.add_subcommand("inspect", "Validate an STL file");
  inspect->add_option("stl", stl_path, "STL file")->required();

  std::filesystem::path preview_path;
  auto* preview = app.add_subcommand("preview", "Write the height grid as PGM");
  add_pipeline_options(*preview, cfg, preset, transfer);
  preview->add_option("--output", preview_path, "Output PGM path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    finish_config(cfg, preset, transfer);
    relieforge::RunReport report;
    int rc = kOk;
    if (*convert) {
      cfg.format = ascii ? relieforge::StlFormat::kAscii : relieforge::StlFormat::kBinary;
      if (!report_path.empty()) cfg.report_path = report_path;
      report = relieforge::convert(cfg);
      if (!relieforge::convert_succeeded(report)) rc = kGeometry;
    } else if (*inspect) {
      report = relieforge::inspect(stl_path);
      if (!report.mesh.watertight) rc = kGeometry;
    } else {
      report = relieforge::preview(cfg, preview_path);
    }
    std::cout << relieforge::report_json(report) << '\n';
    print_summary(report);
    return rc;
  } catch (const relieforge::Error& e) {
    std::fprintf(stderr, "error %s: %s\n", std::string(relieforge::code_name(e.code())).c_str(),
                 e.what());
    return exit_for(e.category());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error internal: %s\n", e.what());
    return kOutput;
  }
}
