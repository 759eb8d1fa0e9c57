#pragma once

// One image row followed through time, the raw material for line-over-time
// plots.

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>

#include "phasemag/detail/atomic_file.hpp"
#include "phasemag/detail/text.hpp"
#include "phasemag/error.hpp"
#include "phasemag/grid.hpp"

namespace phasemag {

struct LineTrace {
  std::size_t row_index = 0;
  double fps = 1.0;
  /// frame_count x width; values(t, m) = frame[t](row_index, m).
  Grid<double> values;

  [[nodiscard]] std::size_t frame_count() const noexcept { return values.height(); }
};

/// Accumulates a trace one frame at a time.
class LineTraceBuilder {
 public:
  LineTraceBuilder(std::size_t row_index, double fps) : row_(row_index), fps_(fps) {
    detail::require(fps > 0.0 && std::isfinite(fps), ErrorKind::invalid_argument, "fps must be > 0");
  }

  void append(const Frame& frame) {
    if (row_ >= frame.height()) {
      detail::fail(ErrorKind::invalid_argument, "row " + std::to_string(row_) +
                                                    " out of range for height " +
                                                    std::to_string(frame.height()));
    }
    if (rows_ == 0) {
      width_ = frame.width();
    } else if (frame.width() != width_) {
      detail::fail(ErrorKind::size_mismatch, "trace frames differ in width");
    }
    const auto line = frame.row(row_);
    data_.insert(data_.end(), line.begin(), line.end());
    ++rows_;
  }

  [[nodiscard]] LineTrace finish() && {
    return LineTrace{row_, fps_, Grid<double>(rows_, width_, std::move(data_))};
  }

 private:
  std::size_t row_;
  double fps_;
  std::size_t width_ = 0;
  std::size_t rows_ = 0;
  std::vector<double> data_;
};

[[nodiscard]] inline LineTrace extract_line(std::span<const Frame> frames, std::size_t row_index,
                                            double fps = 1.0) {
  LineTraceBuilder builder(row_index, fps);
  for (const Frame& f : frames) builder.append(f);
  return std::move(builder).finish();
}

/// Header "t,m0,m1,...", then one row per frame: t = i/fps followed by the
/// row intensities.
[[nodiscard]] inline std::string encode_trace_csv(const LineTrace& trace) {
  std::string out = "t";
  for (std::size_t m = 0; m < trace.values.width(); ++m) out += ",m" + std::to_string(m);
  out += '\n';
  for (std::size_t t = 0; t < trace.frame_count(); ++t) {
    out += detail::format_number(static_cast<double>(t) / trace.fps);
    for (double v : trace.values.row(t)) {
      out += ',';
      out += detail::format_number(v);
    }
    out += '\n';
  }
  return out;
}

inline void write_trace_csv(const LineTrace& trace, const std::filesystem::path& path) {
  detail::write_file_atomically(path, encode_trace_csv(trace));
}

}  // namespace phasemag
