#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>

#include "phasemag/error.hpp"
#include "phasemag/grid.hpp"
#include "phasemag/spectral.hpp"

namespace phasemag {

inline constexpr double kDefaultBandFraction = 0.125;

/// Residual (radians) above which an estimate should not be trusted as a
/// pure global translation.
inline constexpr double kUnreliableResidual = 0.1;

struct ShiftEstimate {
  ShiftVector delta;
  double residual = 0.0;  // weighted RMS phase misfit, radians
  std::size_t bins_used = 0;

  [[nodiscard]] bool reliable() const noexcept { return residual <= kUnreliableResidual; }
};

/// Weighted least-squares fit of arg(S2 conj S1) = 2 pi (d1 k'/N + d2 l'/M)
/// over the low-frequency band |k'| <= band*N, |l'| <= band*M, excluding DC
/// and self-conjugate bins. Weights are min(|S1|, |S2|); phases are taken
/// as principal values, so the band must stay free of phase wrap.
[[nodiscard]] inline ShiftEstimate estimate_shift_spectra(const Spectrum& spec1,
                                                          const Spectrum& spec2,
                                                          double band_fraction = kDefaultBandFraction,
                                                          std::optional<double> mag_floor = {}) {
  detail::require(band_fraction > 0.0 && band_fraction <= 0.5, ErrorKind::invalid_argument,
                  "estimate_shift: band_fraction must be in (0, 0.5]");
  detail::require_same_shape(spec1, spec2, "estimate_shift");
  detail::require_nonempty(spec1.height(), spec1.width(), "estimate_shift");

  const std::size_t n = spec1.height();
  const std::size_t m = spec1.width();
  const double floor = mag_floor.value_or(1e-12 * static_cast<double>(n) *
                                          static_cast<double>(m) * kMaxIntensity);
  const double k_limit = band_fraction * static_cast<double>(n);
  const double l_limit = band_fraction * static_cast<double>(m);
  constexpr double two_pi = 2.0 * std::numbers::pi;

  // Normal equations of sum w (phi - a x - b y)^2.
  double sxx = 0, sxy = 0, syy = 0, sxp = 0, syp = 0, sw = 0;
  std::size_t in_band = 0;
  std::size_t used = 0;
  auto visit = [&](auto&& fn) {
    for (std::size_t k = 0; k < n; ++k) {
      const long kf = signed_frequency(k, n);
      if (std::abs(static_cast<double>(kf)) > k_limit) continue;
      for (std::size_t l = 0; l < m; ++l) {
        const long lf = signed_frequency(l, m);
        if (std::abs(static_cast<double>(lf)) > l_limit) continue;
        if (is_self_conjugate({k, l}, n, m)) continue;
        const double a1 = std::abs(spec1(k, l));
        const double a2 = std::abs(spec2(k, l));
        fn(kf, lf, a1, a2, spec2(k, l) * std::conj(spec1(k, l)));
      }
    }
  };
  visit([&](long kf, long lf, double a1, double a2, std::complex<double> z) {
    ++in_band;
    if (a1 <= floor || a2 <= floor) return;
    const double w = std::min(a1, a2);
    const double x = two_pi * static_cast<double>(kf) / static_cast<double>(n);
    const double y = two_pi * static_cast<double>(lf) / static_cast<double>(m);
    const double phi = std::arg(z);
    sxx += w * x * x;
    sxy += w * x * y;
    syy += w * y * y;
    sxp += w * x * phi;
    syp += w * y * phi;
    sw += w;
    ++used;
  });

  if (used == 0 && in_band > 0) {
    detail::fail(ErrorKind::insufficient_data,
                 "estimate_shift: every in-band bin is below the magnitude floor");
  }
  if (used < 3) {
    detail::fail(ErrorKind::insufficient_data,
                 "estimate_shift: fewer than 3 usable bins in band; widen band_fraction");
  }
  const double det = sxx * syy - sxy * sxy;
  if (!(std::abs(det) > 1e-12 * std::max(1.0, sxx * syy))) {
    detail::fail(ErrorKind::insufficient_data,
                 "estimate_shift: in-band bins do not constrain both shift components");
  }

  ShiftEstimate est;
  est.delta.d1 = (syy * sxp - sxy * syp) / det;
  est.delta.d2 = (sxx * syp - sxy * sxp) / det;
  est.bins_used = used;

  double sq = 0.0;
  visit([&](long kf, long lf, double a1, double a2, std::complex<double> z) {
    if (a1 <= floor || a2 <= floor) return;
    const double w = std::min(a1, a2);
    const double model = two_pi * (est.delta.d1 * static_cast<double>(kf) / static_cast<double>(n) +
                                   est.delta.d2 * static_cast<double>(lf) / static_cast<double>(m));
    const double r = std::arg(z) - model;
    sq += w * r * r;
  });
  est.residual = std::sqrt(sq / sw);
  return est;
}

/// Global shift of frame2 relative to frame1, so that
/// frame2(n,m) ~ frame1(n + d1, m + d2).
[[nodiscard]] inline ShiftEstimate estimate_shift(const Frame& frame1, const Frame& frame2,
                                                  double band_fraction = kDefaultBandFraction) {
  detail::require(band_fraction > 0.0 && band_fraction <= 0.5, ErrorKind::invalid_argument,
                  "estimate_shift: band_fraction must be in (0, 0.5]");
  detail::require_nonempty(frame1.height(), frame1.width(), "estimate_shift");
  detail::require_same_shape(frame1, frame2, "estimate_shift");
  return estimate_shift_spectra(dft2(frame1), dft2(frame2), band_fraction);
}

}  // namespace phasemag
