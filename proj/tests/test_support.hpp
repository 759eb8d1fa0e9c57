#pragma once

// Shared helpers for the test binaries: independent oracles and seeded
// frame generators. Nothing here calls into the FFT path.

#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "phasemag/grid.hpp"
#include "phasemag/synth.hpp"

namespace phasemag::testing {

/// Direct O(N^2 M^2) evaluation of the forward 2D DFT. Exponent indices are
/// reduced modulo N and M before the angle is formed.
inline Spectrum naive_dft2(const Frame& f) {
  const std::size_t n = f.height();
  const std::size_t m = f.width();
  Spectrum out(n, m);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < m; ++l) {
      std::complex<double> acc{0.0, 0.0};
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < m; ++c) {
          const double angle =
              -2.0 * std::numbers::pi *
              (static_cast<double>((k * r) % n) / static_cast<double>(n) +
               static_cast<double>((l * c) % m) / static_cast<double>(m));
          acc += f(r, c) * std::polar(1.0, angle);
        }
      }
      out(k, l) = acc;
    }
  }
  return out;
}

/// Uniform random intensities in [lo, hi].
inline Frame random_frame(std::size_t height, std::size_t width, std::mt19937_64& rng,
                          double lo = 0.0, double hi = 255.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Frame f(height, width);
  for (double& v : f.values()) v = dist(rng);
  return f;
}

/// A few soft discs placed so each edge stays clear of the frame border;
/// the periodic extension is then band-limited in practice.
inline Frame smooth_frame(std::size_t height, std::size_t width, std::mt19937_64& rng,
                          double sigma_lo = 2.0, double sigma_hi = 4.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double small = static_cast<double>(std::min(height, width));
  std::vector<CircleSpec> circles;
  const int count = 1 + static_cast<int>(u(rng) * 3.0);
  for (int i = 0; i < count; ++i) {
    CircleSpec c;
    c.radius = small * (0.1 + 0.15 * u(rng));
    c.sigma = sigma_lo + (sigma_hi - sigma_lo) * u(rng);
    const double margin = c.radius + 8.0 * c.sigma;
    const auto place = [&](std::size_t extent) {
      const double e = static_cast<double>(extent);
      return margin < e / 2.0 ? margin + u(rng) * (e - 2.0 * margin) : e / 2.0;
    };
    c.center_row = place(height);
    c.center_col = place(width);
    c.peak = 150.0 + 105.0 * u(rng);
    circles.push_back(c);
  }
  return render_circles(height, width, circles);
}

/// One soft disc clear of the border, random size, softness and peak; the
/// frame family used for estimator accuracy checks.
inline Frame sigmoid_disc_frame(std::mt19937_64& rng, std::size_t size_lo, std::size_t size_hi,
                                double sigma_lo, double sigma_hi) {
  std::uniform_int_distribution<std::size_t> size(size_lo, size_hi);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t h = size(rng);
  const std::size_t w = size(rng);
  CircleSpec c;
  c.radius = static_cast<double>(std::min(h, w)) * (0.15 + 0.15 * u(rng));
  c.sigma = sigma_lo + (sigma_hi - sigma_lo) * u(rng);
  c.peak = 150.0 + 105.0 * u(rng);
  const double margin = c.radius + 8.0 * c.sigma;
  c.center_row = margin + u(rng) * (static_cast<double>(h) - 2.0 * margin);
  c.center_col = margin + u(rng) * (static_cast<double>(w) - 2.0 * margin);
  return render_circle(h, w, c);
}

inline double max_abs(const Spectrum& a, const Spectrum& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("phasemag_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }
  [[nodiscard]] std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace phasemag::testing
