#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phasemag/error.hpp"

namespace phasemag {

/// Row-major N x M grid. Element (n, m) lives at n * width + m.
template <typename T>
class Grid {
 public:
  using value_type = T;

  Grid() = default;

  Grid(std::size_t height, std::size_t width, T fill = T{})
      : height_(height), width_(width), data_(height * width, fill) {}

  Grid(std::size_t height, std::size_t width, std::vector<T> data)
      : height_(height), width_(width), data_(std::move(data)) {
    if (data_.size() != height_ * width_) {
      detail::fail(ErrorKind::invalid_argument,
                   "grid data length " + std::to_string(data_.size()) +
                       " does not match " + std::to_string(height_) + "x" +
                       std::to_string(width_));
    }
  }

  [[nodiscard]] std::size_t height() const noexcept { return height_; }
  [[nodiscard]] std::size_t width() const noexcept { return width_; }
  [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
  [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

  [[nodiscard]] T& operator()(std::size_t n, std::size_t m) noexcept {
    return data_[n * width_ + m];
  }
  [[nodiscard]] const T& operator()(std::size_t n, std::size_t m) const noexcept {
    return data_[n * width_ + m];
  }

  [[nodiscard]] std::span<T> values() noexcept { return data_; }
  [[nodiscard]] std::span<const T> values() const noexcept { return data_; }
  [[nodiscard]] T* data() noexcept { return data_.data(); }
  [[nodiscard]] const T* data() const noexcept { return data_.data(); }

  [[nodiscard]] std::span<const T> row(std::size_t n) const noexcept {
    return std::span<const T>(data_).subspan(n * width_, width_);
  }

  template <typename U>
  [[nodiscard]] bool same_shape(const Grid<U>& other) const noexcept {
    return height_ == other.height() && width_ == other.width();
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<T> data_;
};

/// Real-valued intensity image J(n, m). Stored in double; 8-bit only on disk.
using Frame = Grid<double>;

/// Complex spectrum over the same N x M index space as its frame.
using Spectrum = Grid<std::complex<double>>;

/// Displacement in pixels: d1 along rows (n), d2 along columns (m).
struct ShiftVector {
  double d1 = 0.0;
  double d2 = 0.0;

  friend bool operator==(const ShiftVector&, const ShiftVector&) = default;
};

struct BinIndex {
  std::size_t k = 0;
  std::size_t l = 0;

  friend bool operator==(const BinIndex&, const BinIndex&) = default;
  friend auto operator<=>(const BinIndex&, const BinIndex&) = default;
};

inline constexpr double kMaxIntensity = 255.0;

/// Clamp to [0, 255] then round half away from zero.
[[nodiscard]] inline double quantize_intensity(double v) noexcept {
  if (!(v > 0.0)) return 0.0;  // also maps NaN to 0
  if (v > kMaxIntensity) return kMaxIntensity;
  return std::round(v);
}

[[nodiscard]] inline Frame quantize(Frame frame) {
  for (double& v : frame.values()) v = quantize_intensity(v);
  return frame;
}

[[nodiscard]] inline double max_abs_difference(const Frame& a, const Frame& b) {
  detail::require(a.same_shape(b), ErrorKind::size_mismatch,
                  "frames differ in size");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

namespace detail {

inline void require_nonempty(std::size_t height, std::size_t width, const char* what) {
  if (height < 1 || width < 1) {
    fail(ErrorKind::invalid_argument, std::string(what) + ": dimensions must be at least 1x1");
  }
}

template <typename A, typename B>
void require_same_shape(const Grid<A>& a, const Grid<B>& b, const char* what) {
  if (!a.same_shape(b)) {
    fail(ErrorKind::size_mismatch,
         std::string(what) + ": size mismatch " + std::to_string(a.height()) + "x" +
             std::to_string(a.width()) + " vs " + std::to_string(b.height()) + "x" +
             std::to_string(b.width()));
  }
}

}  // namespace detail
}  // namespace phasemag
