#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "relieforge/heightfield.hpp"
#include "relieforge/image.hpp"

namespace relieforge {

/// Affine piece a*x + b over an interval of intensities. Endpoints may be
/// open or closed independently.
struct Segment {
  double lo = 0.0;
  double hi = 1.0;
  bool lo_closed = true;
  bool hi_closed = true;
  double slope = 0.0;
  double intercept = 0.0;

  bool contains(double x) const {
    const bool above = lo_closed ? x >= lo : x > lo;
    const bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
  }
  double map(double x) const { return slope * x + intercept; }

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Multiplier from transfer output to millimeters; always finite and > 0.
class ScaleFactor {
 public:
  explicit ScaleFactor(double s);
  double value() const { return s_; }

 private:
  double s_;
};

/// Piecewise intensity-to-height map whose segments partition [0,1]
/// exactly. Construction fails on any gap or overlap, so a constructed
/// function is total on [0,1].
class TransferFunction {
 public:
  TransferFunction(std::string name, std::vector<Segment> segments);

  const std::string& name() const { return name_; }
  const std::vector<Segment>& segments() const { return segments_; }

  /// Throws kTransferDomain for x outside [0,1].
  double evaluate(double x) const;

  /// Index of the single segment containing x, or -1.
  int find_segment(double x) const;

 private:
  std::string name_;
  std::vector<Segment> segments_;
};

/// The three-band relief map: near-white background to 0.3, near-black
/// glyphs to 1.3, a linear ramp -0.5x + 1.3 in between. Thresholds use
/// strict comparisons, so 0.25 and 0.9 land on the ramp.
TransferFunction preset_jdrf();

/// Looks up a preset by CLI name ("jdrf-relief"); throws kInvalidArgument.
TransferFunction preset_by_name(std::string_view name);

/// Parses the line-oriented segment grammar:
///   [0.25,0.9] => -0.5*x + 1.3
///   (0.9,1.0]  => 0.3
/// '#' starts a comment; blank lines are ignored.
TransferFunction parse_transfer_spec(std::string_view text,
                                     std::string name = "custom");

/// Inverse of parse_transfer_spec; numbers use shortest round-trip form.
std::string to_transfer_spec(const TransferFunction& tf);

/// Elementwise s * tf(value); output has the image's shape, row 0 = top.
ScalarGrid apply(const TransferFunction& tf, const GrayImage& img,
                 ScaleFactor scale, unsigned threads = 1);

}  // namespace relieforge
