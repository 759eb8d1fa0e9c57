#pragma once

// Forward/inverse 2D DFT with the conventions
//   S(k,l) = sum_n sum_m J(n,m) exp(-2 pi i (kn/N + lm/M))
//   J(n,m) = 1/(NM) sum_k sum_l S(k,l) exp(+2 pi i (kn/N + lm/M))
// plus the Hermitian-symmetry helpers every magnification step relies on.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "phasemag/detail/fftw_plan.hpp"
#include "phasemag/error.hpp"
#include "phasemag/grid.hpp"

namespace phasemag {

/// Relative bound on the imaginary residue idft2 tolerates before it treats
/// the spectrum as non-Hermitian.
inline constexpr double kImagResidueTolerance = 1e-8;

/// Signed frequency of index k on an n-point axis, in [-floor(n/2), ceil(n/2)).
[[nodiscard]] constexpr long signed_frequency(std::size_t k, std::size_t n) noexcept {
  return k < (n + 1) / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

/// Index of the conjugate partner: ((N-k) mod N, (M-l) mod M).
[[nodiscard]] constexpr BinIndex conjugate_partner(BinIndex b, std::size_t height,
                                                   std::size_t width) noexcept {
  return {(height - b.k) % height, (width - b.l) % width};
}

/// True for DC and, on even axes, the Nyquist row/column intersections.
[[nodiscard]] constexpr bool is_self_conjugate(BinIndex b, std::size_t height,
                                               std::size_t width) noexcept {
  return conjugate_partner(b, height, width) == b;
}

[[nodiscard]] inline Spectrum dft2(const Frame& frame) {
  detail::require_nonempty(frame.height(), frame.width(), "dft2");
  std::vector<std::complex<double>> in(frame.values().begin(), frame.values().end());
  Spectrum out(frame.height(), frame.width());
  detail::fft2(frame.height(), frame.width(), detail::FftDirection::forward, in.data(),
               out.data());
  return out;
}

/// Inverse transform of an arbitrary complex grid, 1/(NM) applied.
[[nodiscard]] inline Spectrum idft2_complex(const Spectrum& spectrum) {
  detail::require_nonempty(spectrum.height(), spectrum.width(), "idft2");
  std::vector<std::complex<double>> in(spectrum.values().begin(), spectrum.values().end());
  Spectrum out(spectrum.height(), spectrum.width());
  detail::fft2(spectrum.height(), spectrum.width(), detail::FftDirection::backward, in.data(),
               out.data());
  const double scale = 1.0 / static_cast<double>(spectrum.size());
  for (auto& v : out.values()) v *= scale;
  return out;
}

struct InverseResult {
  Frame frame;            // real parts
  double max_imag = 0.0;  // largest discarded |imaginary part|
  double max_real = 0.0;  // largest |real part|
};

[[nodiscard]] inline InverseResult idft2_with_residue(const Spectrum& spectrum) {
  const Spectrum full = idft2_complex(spectrum);
  InverseResult result{Frame(full.height(), full.width()), 0.0, 0.0};
  for (std::size_t i = 0; i < full.size(); ++i) {
    const auto v = full.data()[i];
    result.frame.data()[i] = v.real();
    result.max_imag = std::max(result.max_imag, std::abs(v.imag()));
    result.max_real = std::max(result.max_real, std::abs(v.real()));
  }
  return result;
}

/// Inverse transform to a real frame. Throws ErrorKind::symmetry when the
/// discarded imaginary residue exceeds 1e-8 of the largest intensity.
[[nodiscard]] inline Frame idft2(const Spectrum& spectrum) {
  InverseResult r = idft2_with_residue(spectrum);
  const double bound = kImagResidueTolerance * std::max(r.max_real, 1.0);
  if (r.max_imag > bound) {
    detail::fail(ErrorKind::symmetry,
                 "idft2: imaginary residue " + std::to_string(r.max_imag) +
                     " exceeds bound; spectrum is not Hermitian-symmetric");
  }
  return std::move(r.frame);
}

[[nodiscard]] inline bool check_hermitian(const Spectrum& spectrum, double tol) {
  detail::require(tol >= 0.0, ErrorKind::invalid_argument, "check_hermitian: tol must be >= 0");
  const std::size_t n = spectrum.height();
  const std::size_t m = spectrum.width();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < m; ++l) {
      const BinIndex p = conjugate_partner({k, l}, n, m);
      const auto v = spectrum(k, l);
      if (p == BinIndex{k, l}) {
        if (std::abs(v.imag()) > tol) return false;
      } else if (std::abs(v - std::conj(spectrum(p.k, p.l))) > tol) {
        return false;
      }
    }
  }
  return true;
}

/// output(n,m) = input((n+d1) mod N, (m+d2) mod M).
template <typename T>
[[nodiscard]] Grid<T> circular_shift(const Grid<T>& grid, long d1, long d2) {
  const auto n = static_cast<long>(grid.height());
  const auto m = static_cast<long>(grid.width());
  Grid<T> out(grid.height(), grid.width());
  if (grid.empty()) return out;
  const long s1 = ((d1 % n) + n) % n;
  const long s2 = ((d2 % m) + m) % m;
  for (long r = 0; r < n; ++r) {
    const auto src_row = static_cast<std::size_t>((r + s1) % n);
    for (long c = 0; c < m; ++c) {
      out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
          grid(src_row, static_cast<std::size_t>((c + s2) % m));
    }
  }
  return out;
}

}  // namespace phasemag
