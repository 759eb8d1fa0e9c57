#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <tuple>

namespace phasemag::detail {

enum class FftDirection { forward = FFTW_FORWARD, backward = FFTW_BACKWARD };

// FFTW's planner is not re-entrant, so plan creation is serialized here.
// Execution goes through fftw_execute_dft with caller-owned arrays, which
// FFTW documents as thread-safe. ESTIMATE keeps plans (and therefore every
// output bit) independent of timing measurements.
class FftPlanCache {
 public:
  static FftPlanCache& instance() {
    static FftPlanCache cache;
    return cache;
  }

  FftPlanCache(const FftPlanCache&) = delete;
  FftPlanCache& operator=(const FftPlanCache&) = delete;

  fftw_plan plan(std::size_t height, std::size_t width, FftDirection dir,
                 std::complex<double>* in, std::complex<double>* out) {
    const auto key = std::make_tuple(height, width, static_cast<int>(dir));
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    fftw_plan p = fftw_plan_dft_2d(static_cast<int>(height), static_cast<int>(width),
                                   reinterpret_cast<fftw_complex*>(in),
                                   reinterpret_cast<fftw_complex*>(out),
                                   static_cast<int>(dir), FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, p);
    return p;
  }

 private:
  FftPlanCache() = default;
  ~FftPlanCache() {
    for (auto& [key, p] : plans_) fftw_destroy_plan(p);
  }

  std::mutex mutex_;
  std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans_;
};

/// Unnormalized 2D transform, out-of-place. `in` and `out` hold height*width values.
inline void fft2(std::size_t height, std::size_t width, FftDirection dir,
                 std::complex<double>* in, std::complex<double>* out) {
  fftw_plan p = FftPlanCache::instance().plan(height, width, dir, in, out);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(in), reinterpret_cast<fftw_complex*>(out));
}

}  // namespace phasemag::detail
