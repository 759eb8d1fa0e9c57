#pragma once

// Global phase-based motion magnification.
//
// Given frames J1, J2 with J2(n,m) = J1(n+d1, m+d2), the unit-modulus ratio
//   E(k,l) = (S2/|S2|) / (S1/|S1|) = exp(2 pi i (d1 k/N + d2 l/M))
// raised to alpha and applied to S2 yields the spectrum of J1 shifted by
// (1+alpha)(d1,d2). Only a half-spectrum is computed; its conjugate image is
// filled by Hermitian symmetry so the inverse transform is real.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phasemag/detail/parallel.hpp"
#include "phasemag/error.hpp"
#include "phasemag/grid.hpp"
#include "phasemag/spectral.hpp"

namespace phasemag {

struct MagnifyParams {
  double alpha = 0.0;
  /// Bins with |S| at or below this are phase-less. Unset means
  /// 1e-12 * N * M * 255 for the grid being processed.
  std::optional<double> mag_floor;
  /// Hermitian check tolerance, scaled by N*M when applied.
  double sym_tol = 1e-9;

  [[nodiscard]] double floor_for(std::size_t height, std::size_t width) const {
    if (mag_floor) return *mag_floor;
    return 1e-12 * static_cast<double>(height) * static_cast<double>(width) * kMaxIntensity;
  }

  void validate() const {
    detail::require(std::isfinite(alpha), ErrorKind::invalid_argument, "alpha must be finite");
    detail::require(!mag_floor || (*mag_floor >= 0.0 && std::isfinite(*mag_floor)),
                    ErrorKind::invalid_argument, "mag_floor must be >= 0");
    detail::require(sym_tol >= 0.0 && std::isfinite(sym_tol), ErrorKind::invalid_argument,
                    "sym_tol must be >= 0");
  }
};

/// Unit-modulus per-bin ratio E(k,l). Exactly 1 at DC and at phase-less
/// bins; exactly +1 or -1 at the other self-conjugate bins.
struct PhaseRatio {
  Spectrum values;

  [[nodiscard]] std::size_t height() const noexcept { return values.height(); }
  [[nodiscard]] std::size_t width() const noexcept { return values.width(); }
};

struct ConjugatePair {
  BinIndex computed;
  BinIndex partner;
};

/// Visits every (computed, partner) pair of the half-spectrum enumeration:
/// first row, first column, the interior block and its (k, M-l) mirror, and
/// on even axes the centre row k = N/2 / centre column l = M/2.
/// Self-conjugate bins are not visited.
template <typename Fn>
void for_each_conjugate_pair(std::size_t height, std::size_t width, Fn&& fn) {
  const std::size_t n = height;
  const std::size_t m = width;
  const std::size_t k_half = (n - 1) / 2;
  const std::size_t l_half = (m - 1) / 2;

  for (std::size_t l = 1; l <= l_half; ++l) fn(BinIndex{0, l}, BinIndex{0, m - l});
  for (std::size_t k = 1; k <= k_half; ++k) fn(BinIndex{k, 0}, BinIndex{n - k, 0});
  for (std::size_t k = 1; k <= k_half; ++k) {
    for (std::size_t l = 1; l <= l_half; ++l) {
      fn(BinIndex{k, l}, BinIndex{n - k, m - l});
      fn(BinIndex{k, m - l}, BinIndex{n - k, l});
    }
  }
  if (n % 2 == 0) {
    for (std::size_t l = 1; l <= l_half; ++l) fn(BinIndex{n / 2, l}, BinIndex{n / 2, m - l});
  }
  if (m % 2 == 0) {
    for (std::size_t k = 1; k <= k_half; ++k) fn(BinIndex{k, m / 2}, BinIndex{n - k, m / 2});
  }
}

/// DC plus (N/2,0), (0,M/2), (N/2,M/2) where the axis lengths are even.
[[nodiscard]] inline std::vector<BinIndex> self_conjugate_bins(std::size_t height,
                                                               std::size_t width) {
  std::vector<BinIndex> bins{{0, 0}};
  if (height % 2 == 0) bins.push_back({height / 2, 0});
  if (width % 2 == 0) bins.push_back({0, width / 2});
  if (height % 2 == 0 && width % 2 == 0) bins.push_back({height / 2, width / 2});
  return bins;
}

struct HalfSpectrumPlan {
  std::vector<ConjugatePair> pairs;
  std::vector<BinIndex> self_conjugate;
};

/// Materialized form of for_each_conjugate_pair, mostly for inspection.
[[nodiscard]] inline HalfSpectrumPlan half_spectrum_plan(std::size_t height, std::size_t width) {
  detail::require_nonempty(height, width, "half_spectrum_plan");
  HalfSpectrumPlan plan;
  plan.pairs.reserve(height * width / 2);
  for_each_conjugate_pair(height, width, [&](BinIndex c, BinIndex p) {
    plan.pairs.push_back({c, p});
  });
  plan.self_conjugate = self_conjugate_bins(height, width);
  return plan;
}

[[nodiscard]] inline PhaseRatio phase_ratio(const Spectrum& spec1, const Spectrum& spec2,
                                            const MagnifyParams& params) {
  params.validate();
  detail::require_same_shape(spec1, spec2, "phase_ratio");
  detail::require_nonempty(spec1.height(), spec1.width(), "phase_ratio");
  const std::size_t n = spec1.height();
  const std::size_t m = spec1.width();
  const double floor = params.floor_for(n, m);

  PhaseRatio ratio{Spectrum(n, m, std::complex<double>{1.0, 0.0})};
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < m; ++l) {
      const auto a = spec1(k, l);
      const auto b = spec2(k, l);
      if (std::abs(a) <= floor || std::abs(b) <= floor) continue;
      // (b/|b|) / (a/|a|) == b conj(a) / |b conj(a)|
      const auto z = b * std::conj(a);
      const double mag = std::abs(z);
      if (!(mag > 0.0)) continue;
      ratio.values(k, l) = z / mag;
    }
  }
  for (const BinIndex b : self_conjugate_bins(n, m)) {
    auto& e = ratio.values(b.k, b.l);
    e = (b == BinIndex{0, 0} || e.real() >= 0.0) ? std::complex<double>{1.0, 0.0}
                                                  : std::complex<double>{-1.0, 0.0};
  }
  return ratio;
}

namespace detail {

inline void validate_ratio(const PhaseRatio& ratio) {
  constexpr double kUnitTolerance = 1e-12;
  for (const auto& e : ratio.values.values()) {
    if (!(std::abs(std::abs(e) - 1.0) <= kUnitTolerance)) {
      fail(ErrorKind::invalid_argument, "phase ratio has a bin off the unit circle");
    }
  }
  const std::size_t n = ratio.height();
  const std::size_t m = ratio.width();
  if (ratio.values(0, 0) != std::complex<double>{1.0, 0.0}) {
    fail(ErrorKind::invalid_argument, "phase ratio DC bin must be exactly 1");
  }
  for (const BinIndex b : self_conjugate_bins(n, m)) {
    const auto e = ratio.values(b.k, b.l);
    if (e.imag() != 0.0 || (e.real() != 1.0 && e.real() != -1.0)) {
      fail(ErrorKind::invalid_argument, "phase ratio self-conjugate bin must be +1 or -1");
    }
  }
}

/// E^alpha = exp(i alpha Arg E), Arg in (-pi, pi].
[[nodiscard]] inline std::complex<double> ratio_power(std::complex<double> e, double alpha) {
  double theta = std::arg(e);
  if (theta == -std::numbers::pi) theta = std::numbers::pi;
  return std::polar(1.0, alpha * theta);
}

}  // namespace detail

[[nodiscard]] inline Spectrum apply_magnification(const Spectrum& spec2, const PhaseRatio& ratio,
                                                  const MagnifyParams& params) {
  params.validate();
  detail::require_same_shape(spec2, ratio.values, "apply_magnification");
  detail::require_nonempty(spec2.height(), spec2.width(), "apply_magnification");
  detail::validate_ratio(ratio);

  const std::size_t n = spec2.height();
  const std::size_t m = spec2.width();
  // Self-conjugate bins keep their input value; every other bin is written
  // exactly once, either as computed or as the conjugate of its partner.
  Spectrum out = spec2;
  for_each_conjugate_pair(n, m, [&](BinIndex c, BinIndex p) {
    const auto v = spec2(c.k, c.l) * detail::ratio_power(ratio.values(c.k, c.l), params.alpha);
    out(c.k, c.l) = v;
    out(p.k, p.l) = std::conj(v);
  });

  const double tol = params.sym_tol * static_cast<double>(n) * static_cast<double>(m);
  if (!check_hermitian(out, tol)) {
    detail::fail(ErrorKind::symmetry,
                 "apply_magnification: result is not Hermitian (input spectrum not from a real frame?)");
  }
  return out;
}

struct MagnifiedFrame {
  Frame frame;            // real-valued, before clamping/rounding
  double max_imag = 0.0;  // imaginary residue discarded by the inverse
};

/// Magnification in spectral form, for callers that already hold spectra.
[[nodiscard]] inline MagnifiedFrame magnify_spectra(const Spectrum& spec1, const Spectrum& spec2,
                                                    const MagnifyParams& params) {
  const PhaseRatio ratio = phase_ratio(spec1, spec2, params);
  InverseResult inv = idft2_with_residue(apply_magnification(spec2, ratio, params));
  return {std::move(inv.frame), inv.max_imag};
}

[[nodiscard]] inline MagnifiedFrame magnify_pair_unquantized(const Frame& frame1,
                                                             const Frame& frame2,
                                                             const MagnifyParams& params) {
  params.validate();
  detail::require_nonempty(frame1.height(), frame1.width(), "magnify_pair");
  detail::require_nonempty(frame2.height(), frame2.width(), "magnify_pair");
  detail::require_same_shape(frame1, frame2, "magnify_pair");
  return magnify_spectra(dft2(frame1), dft2(frame2), params);
}

namespace detail {

inline Frame finish_magnified(MagnifiedFrame mf) {
  double max_real = 1.0;
  for (double v : mf.frame.values()) max_real = std::max(max_real, std::abs(v));
  if (mf.max_imag > kImagResidueTolerance * max_real) {
    fail(ErrorKind::symmetry, "magnified frame has non-negligible imaginary residue");
  }
  return quantize(std::move(mf.frame));
}

}  // namespace detail

/// Synthesizes frame2 with its displacement from frame1 scaled by (1+alpha),
/// clamped to [0,255] and rounded half away from zero.
/// Throws ErrorKind::size_mismatch when the frames differ in size.
[[nodiscard]] inline Frame magnify_pair(const Frame& frame1, const Frame& frame2,
                                        const MagnifyParams& params) {
  return detail::finish_magnified(magnify_pair_unquantized(frame1, frame2, params));
}

enum class ReferenceMode { first, previous };

/// Frame-at-a-time magnifier: the first frame pushed becomes output 0
/// unchanged; each later frame is magnified against frame 0 (`first`) or
/// against the previous input frame (`previous`). Caches the reference
/// spectrum so each push costs one forward and one inverse transform.
class SequenceMagnifier {
 public:
  SequenceMagnifier(MagnifyParams params, ReferenceMode mode)
      : params_(std::move(params)), mode_(mode) {
    params_.validate();
  }

  [[nodiscard]] Frame push(const Frame& frame) {
    detail::require_nonempty(frame.height(), frame.width(), "magnify_sequence");
    if (!reference_) {
      reference_ = dft2(frame);
      return frame;
    }
    detail::require_same_shape(*reference_, frame, "magnify_sequence");
    Spectrum current = dft2(frame);
    Frame out = detail::finish_magnified(magnify_spectra(*reference_, current, params_));
    if (mode_ == ReferenceMode::previous) reference_ = std::move(current);
    return out;
  }

  /// Magnifies `frame` against the stored reference without advancing
  /// state. Only meaningful in `first` mode; safe to call concurrently.
  [[nodiscard]] Frame magnify_against_reference(const Frame& frame) const {
    detail::require(reference_.has_value(), ErrorKind::invalid_argument,
                    "magnify_sequence: no reference frame pushed yet");
    detail::require_same_shape(*reference_, frame, "magnify_sequence");
    return detail::finish_magnified(magnify_spectra(*reference_, dft2(frame), params_));
  }

  [[nodiscard]] ReferenceMode mode() const noexcept { return mode_; }

 private:
  MagnifyParams params_;
  ReferenceMode mode_;
  std::optional<Spectrum> reference_;
};

[[nodiscard]] inline std::vector<Frame> magnify_sequence(std::span<const Frame> frames,
                                                         const MagnifyParams& params,
                                                         ReferenceMode mode = ReferenceMode::first) {
  detail::require(frames.size() >= 2, ErrorKind::invalid_argument,
                  "magnify_sequence: need at least 2 frames");
  for (const Frame& f : frames) detail::require_same_shape(frames[0], f, "magnify_sequence");

  SequenceMagnifier magnifier(params, mode);
  std::vector<Frame> out(frames.size());
  out[0] = magnifier.push(frames[0]);
  if (mode == ReferenceMode::first) {
    detail::parallel_for(1, frames.size(), [&](std::size_t t) {
      out[t] = magnifier.magnify_against_reference(frames[t]);
    });
  } else {
    for (std::size_t t = 1; t < frames.size(); ++t) out[t] = magnifier.push(frames[t]);
  }
  return out;
}

}  // namespace phasemag
