#include <algorithm>
#include <cmath>
#include <string>

#include "parallel.hpp"
#include "relieforge/error.hpp"
#include "relieforge/transfer.hpp"
#include "transfer_format.hpp"

namespace relieforge {
namespace {

std::string interval_text(double lo, bool lo_closed, double hi, bool hi_closed) {
  std::string s(1, lo_closed ? '[' : '(');
  s += detail::format_number(lo, true);
  s += ',';
  s += detail::format_number(hi, true);
  s += hi_closed ? ']' : ')';
  return s;
}

void check_segment(const Segment& s, std::size_t index) {
  const auto where = "segment " + std::to_string(index) + " " +
                     interval_text(s.lo, s.lo_closed, s.hi, s.hi_closed);
  if (!std::isfinite(s.lo) || !std::isfinite(s.hi) || s.lo < 0.0 || s.hi > 1.0) {
    throw Error(ErrorCode::kTransferMalformed, where + ": endpoints must lie in [0,1]");
  }
  if (s.lo > s.hi || (s.lo == s.hi && !(s.lo_closed && s.hi_closed))) {
    throw Error(ErrorCode::kTransferMalformed, where + ": empty interval");
  }
  if (!std::isfinite(s.slope) || !std::isfinite(s.intercept)) {
    throw Error(ErrorCode::kTransferMalformed, where + ": non-finite coefficients");
  }
}

[[noreturn]] void coverage_error(const std::string& kind, double lo,
                                 bool lo_closed, double hi, bool hi_closed) {
  throw Error(ErrorCode::kTransferCoverage,
              "transfer function coverage " + kind + " over " +
                  interval_text(lo, lo_closed, hi, hi_closed));
}

// Sweeps segments in ascending order of their left endpoint, tracking the
// covered prefix [0, edge) or [0, edge].
void check_coverage(std::vector<Segment> sorted) {
  std::sort(sorted.begin(), sorted.end(), [](const Segment& a, const Segment& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  double edge = 0.0;
  bool edge_covered = false;
  for (const auto& s : sorted) {
    if (s.lo > edge) {
      coverage_error("gap", edge, !edge_covered, s.lo, !s.lo_closed);
    }
    if (s.lo == edge) {
      if (edge_covered && s.lo_closed) coverage_error("overlap", edge, true, edge, true);
      if (!edge_covered && !s.lo_closed) coverage_error("gap", edge, true, edge, true);
    } else {
      coverage_error("overlap", s.lo, s.lo_closed, std::min(edge, s.hi),
                     edge < s.hi ? edge_covered : s.hi_closed);
    }
    edge = s.hi;
    edge_covered = s.hi_closed;
  }
  if (edge < 1.0) coverage_error("gap", edge, !edge_covered, 1.0, true);
  if (!edge_covered) coverage_error("gap", 1.0, true, 1.0, true);
}

}  // namespace

ScaleFactor::ScaleFactor(double s) : s_(s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw Error(ErrorCode::kInvalidArgument,
                "scale factor must be finite and > 0, got " + std::to_string(s));
  }
}

TransferFunction::TransferFunction(std::string name, std::vector<Segment> segments)
    : name_(std::move(name)), segments_(std::move(segments)) {
  if (segments_.empty()) {
    throw Error(ErrorCode::kTransferCoverage,
                "transfer function coverage gap over [0.0,1.0]: no segments");
  }
  for (std::size_t i = 0; i < segments_.size(); ++i) check_segment(segments_[i], i);
  check_coverage(segments_);
}

int TransferFunction::find_segment(double x) const {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (segments_[i].contains(x)) return static_cast<int>(i);
  }
  return -1;
}

double TransferFunction::evaluate(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::kTransferDomain,
                "intensity " + std::to_string(x) + " outside [0,1]");
  }
  const int i = find_segment(x);
  if (i < 0) {
    throw Error(ErrorCode::kTransferMalformed,
                "no segment matches intensity " + std::to_string(x));
  }
  return segments_[static_cast<std::size_t>(i)].map(x);
}

TransferFunction preset_jdrf() {
  return TransferFunction(
      "jdrf-relief",
      {
          {0.9, 1.0, false, true, 0.0, 0.3},
          {0.0, 0.25, true, false, 0.0, 1.3},
          {0.25, 0.9, true, true, -0.5, 1.3},
      });
}

TransferFunction preset_by_name(std::string_view name) {
  if (name == "jdrf-relief") return preset_jdrf();
  throw Error(ErrorCode::kInvalidArgument,
              "unknown preset '" + std::string(name) + "' (known: jdrf-relief)");
}

ScalarGrid apply(const TransferFunction& tf, const GrayImage& img,
                 ScaleFactor scale, unsigned threads) {
  ScalarGrid out;
  out.rows = img.height;
  out.cols = img.width;
  out.values.resize(img.values.size());
  const double s = scale.value();
  for (double v : img.values) {
    if (!(v >= 0.0 && v <= 1.0)) tf.evaluate(v);  // throws kTransferDomain
  }
  // Each worker writes a disjoint row range, so the result is independent
  // of the thread count.
  detail::parallel_chunks(img.height, threads, [&](std::size_t r0, std::size_t r1) {
    for (std::size_t i = r0 * img.width; i < r1 * img.width; ++i) {
      out.values[i] = s * tf.evaluate(img.values[i]);
    }
  });
  return out;
}

}  // namespace relieforge
