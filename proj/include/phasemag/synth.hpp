#pragma once

// Synthetic scenes: sigmoid-edged discs, exact spectral sub-pixel shifts and
// damped-oscillation motion for the video experiments.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "phasemag/detail/parallel.hpp"
#include "phasemag/error.hpp"
#include "phasemag/grid.hpp"
#include "phasemag/spectral.hpp"

namespace phasemag {

/// Disc whose intensity falls as peak / (1 + exp((r - radius) / sigma)),
/// r the Euclidean distance to the centre.
struct CircleSpec {
  double center_row = 0.0;
  double center_col = 0.0;
  double radius = 1.0;
  double sigma = 1.0;
  double peak = kMaxIntensity;

  void validate() const {
    detail::require(std::isfinite(center_row) && std::isfinite(center_col),
                    ErrorKind::invalid_argument, "circle centre must be finite");
    detail::require(radius > 0.0 && std::isfinite(radius), ErrorKind::invalid_argument,
                    "circle radius must be > 0");
    detail::require(sigma > 0.0 && std::isfinite(sigma), ErrorKind::invalid_argument,
                    "circle sigma must be > 0");
    detail::require(peak > 0.0 && peak <= kMaxIntensity, ErrorKind::invalid_argument,
                    "circle peak must be in (0, 255]");
  }

  [[nodiscard]] double intensity_at(double row, double col) const noexcept {
    const double dist = std::hypot(row - center_row, col - center_col);
    return peak / (1.0 + std::exp((dist - radius) / sigma));
  }
};

/// Per-pixel maximum over all circles, clamped to [0, 255].
[[nodiscard]] inline Frame render_circles(std::size_t height, std::size_t width,
                                          std::span<const CircleSpec> circles) {
  detail::require_nonempty(height, width, "render_circles");
  for (const auto& c : circles) c.validate();
  Frame out(height, width);
  for (std::size_t n = 0; n < height; ++n) {
    for (std::size_t m = 0; m < width; ++m) {
      double v = 0.0;
      for (const auto& c : circles) {
        v = std::max(v, c.intensity_at(static_cast<double>(n), static_cast<double>(m)));
      }
      out(n, m) = std::clamp(v, 0.0, kMaxIntensity);
    }
  }
  return out;
}

[[nodiscard]] inline Frame render_circle(std::size_t height, std::size_t width,
                                         const CircleSpec& circle) {
  return render_circles(height, width, std::span<const CircleSpec>(&circle, 1));
}

namespace detail {

// Per-axis factor exp(2 pi i d k'/n); the Nyquist index of an even axis gets
// the real value cos(pi d) so the product stays Hermitian.
inline std::vector<std::complex<double>> axis_shift_factors(std::size_t n, double d) {
  std::vector<std::complex<double>> f(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (n % 2 == 0 && k == n / 2) {
      f[k] = {std::cos(std::numbers::pi * d), 0.0};
    } else {
      const double freq = static_cast<double>(signed_frequency(k, n)) / static_cast<double>(n);
      f[k] = std::polar(1.0, 2.0 * std::numbers::pi * d * freq);
    }
  }
  return f;
}

}  // namespace detail

/// Multiplies a spectrum by the (real-preserving) shift kernel for delta.
[[nodiscard]] inline Spectrum shift_spectrum(const Spectrum& spectrum, ShiftVector delta) {
  detail::require(std::isfinite(delta.d1) && std::isfinite(delta.d2),
                  ErrorKind::invalid_argument, "shift must be finite");
  const auto rows = detail::axis_shift_factors(spectrum.height(), delta.d1);
  const auto cols = detail::axis_shift_factors(spectrum.width(), delta.d2);
  Spectrum out(spectrum.height(), spectrum.width());
  for (std::size_t k = 0; k < spectrum.height(); ++k) {
    for (std::size_t l = 0; l < spectrum.width(); ++l) {
      out(k, l) = spectrum(k, l) * rows[k] * cols[l];
    }
  }
  return out;
}

/// Sub-pixel circular translation, output(n,m) ~ input(n+d1, m+d2), without
/// quantization.
[[nodiscard]] inline Frame subpixel_shift_real(const Frame& frame, ShiftVector delta) {
  detail::require_nonempty(frame.height(), frame.width(), "subpixel_shift");
  return idft2(shift_spectrum(dft2(frame), delta));
}

/// As subpixel_shift_real, then clamped and rounded to 8-bit levels.
[[nodiscard]] inline Frame subpixel_shift(const Frame& frame, ShiftVector delta) {
  return quantize(subpixel_shift_real(frame, delta));
}

enum class Waveform { sine, cosine };

/// amplitude * exp(-damping t) * {sin|cos}(2 pi frequency t), sampled at fps.
struct MotionSignal {
  double amplitude = 0.5;
  double damping = 0.5;
  double frequency = 10.0;
  Waveform waveform = Waveform::sine;
  double duration = 5.0;
  double fps = 150.0;

  void validate() const {
    detail::require(fps > 0.0 && std::isfinite(fps), ErrorKind::invalid_argument,
                    "fps must be > 0");
    detail::require(duration > 0.0 && std::isfinite(duration), ErrorKind::invalid_argument,
                    "duration must be > 0");
    detail::require(std::isfinite(amplitude) && std::isfinite(frequency),
                    ErrorKind::invalid_argument, "amplitude and frequency must be finite");
    detail::require(damping >= 0.0 && std::isfinite(damping), ErrorKind::invalid_argument,
                    "damping must be >= 0");
  }

  [[nodiscard]] double at(double t) const noexcept {
    const double phase = 2.0 * std::numbers::pi * frequency * t;
    const double carrier = waveform == Waveform::sine ? std::sin(phase) : std::cos(phase);
    return amplitude * std::exp(-damping * t) * carrier;
  }

  /// floor(duration * fps) + 1, i.e. t = 0 .. duration inclusive.
  [[nodiscard]] std::size_t sample_count() const noexcept {
    const double span = duration * fps;
    return static_cast<std::size_t>(std::floor(span + 1e-9 * std::max(1.0, span))) + 1;
  }
};

[[nodiscard]] inline std::vector<ShiftVector> sample_motion(const MotionSignal& signal1,
                                                            const MotionSignal& signal2) {
  signal1.validate();
  signal2.validate();
  detail::require(signal1.fps == signal2.fps, ErrorKind::invalid_argument,
                  "sample_motion: signals have different fps");
  detail::require(signal1.duration == signal2.duration, ErrorKind::invalid_argument,
                  "sample_motion: signals have different durations");
  const std::size_t count = signal1.sample_count();
  std::vector<ShiftVector> shifts(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / signal1.fps;
    shifts[i] = {signal1.at(t), signal2.at(t)};
  }
  return shifts;
}

enum class Quantization { real_valued, eight_bit };

/// Produces shifted copies of one base frame, transforming the base once.
class VideoGenerator {
 public:
  explicit VideoGenerator(const Frame& base) : base_spectrum_(dft2(base)) {}

  [[nodiscard]] Frame frame(ShiftVector delta, Quantization q = Quantization::eight_bit) const {
    Frame f = idft2(shift_spectrum(base_spectrum_, delta));
    return q == Quantization::eight_bit ? quantize(std::move(f)) : f;
  }

 private:
  Spectrum base_spectrum_;
};

/// frame[i] = subpixel_shift(base, shifts[i]).
[[nodiscard]] inline std::vector<Frame> generate_video(const Frame& base,
                                                       std::span<const ShiftVector> shifts,
                                                       Quantization q = Quantization::eight_bit) {
  detail::require_nonempty(base.height(), base.width(), "generate_video");
  detail::require(!shifts.empty(), ErrorKind::invalid_argument,
                  "generate_video: shift list is empty");
  const VideoGenerator gen(base);
  std::vector<Frame> frames(shifts.size());
  detail::parallel_for(0, shifts.size(), [&](std::size_t i) { frames[i] = gen.frame(shifts[i], q); });
  return frames;
}

/// Configuration of the damped-oscillation video experiment.
struct VideoPreset {
  std::size_t height = 709;
  std::size_t width = 709;
  CircleSpec circle{354.0, 354.0, 120.0, 8.0, kMaxIntensity};
  MotionSignal row_motion{0.5, 0.5, 10.0, Waveform::sine, 5.0, 150.0};
  MotionSignal col_motion{0.5, 0.5, 10.0, Waveform::cosine, 5.0, 150.0};

  [[nodiscard]] Frame base() const { return render_circle(height, width, circle); }
  [[nodiscard]] std::vector<ShiftVector> shifts() const {
    return sample_motion(row_motion, col_motion);
  }
};

/// 709x709, 5 s at 150 fps, 0.5 exp(-t/2) {sin, cos}(2 pi 10 t).
/// Exposed on the command line as `--preset paper42`.
[[nodiscard]] inline VideoPreset damped_oscillation_preset() { return VideoPreset{}; }

}  // namespace phasemag
