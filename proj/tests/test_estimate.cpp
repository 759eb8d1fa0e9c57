#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "phasemag/estimate.hpp"
#include "phasemag/magnify.hpp"
#include "phasemag/synth.hpp"
#include "test_support.hpp"

using namespace phasemag;
using phasemag::testing::smooth_frame;

namespace {

template <typename Fn>
ErrorKind error_kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected phasemag::Error");
  return ErrorKind::invalid_argument;
}

// Sum of low-frequency cosines, evaluated directly at (n + d1, m + d2).
Frame cosine_pattern(std::size_t h, std::size_t w, double d1, double d2) {
  struct Wave {
    int k, l;
    double amp, phase;
  };
  const Wave waves[] = {{1, 0, 40.0, 0.3}, {0, 2, 30.0, -1.1}, {2, 1, 20.0, 2.0}, {1, -3, 15.0, 0.7}};
  Frame f(h, w);
  for (std::size_t n = 0; n < h; ++n) {
    for (std::size_t m = 0; m < w; ++m) {
      double v = 120.0;
      for (const auto& wv : waves) {
        v += wv.amp * std::cos(2.0 * std::numbers::pi *
                                   (wv.k * (n + d1) / static_cast<double>(h) +
                                    wv.l * (m + d2) / static_cast<double>(w)) +
                               wv.phase);
      }
      f(n, m) = v;
    }
  }
  return f;
}

}  // namespace

TEST_CASE("identical frames give zero shift", "[estimate]") {
  std::mt19937_64 rng(1);
  const Frame f = quantize(smooth_frame(64, 80, rng));
  const ShiftEstimate e = estimate_shift(f, f);
  CHECK(std::abs(e.delta.d1) <= 1e-9);
  CHECK(std::abs(e.delta.d2) <= 1e-9);
  CHECK(e.residual <= 1e-9);
  CHECK(e.bins_used >= 3);
  CHECK(e.reliable());
}

TEST_CASE("analytic cosine pattern is recovered exactly", "[estimate][oracle]") {
  for (const auto& [h, w] : {std::pair<std::size_t, std::size_t>{48, 64}, {49, 63}}) {
    const double d1 = 0.41, d2 = -0.73;
    const ShiftEstimate e =
        estimate_shift(cosine_pattern(h, w, 0.0, 0.0), cosine_pattern(h, w, d1, d2), 0.25);
    CHECK(std::abs(e.delta.d1 - d1) <= 1e-9);
    CHECK(std::abs(e.delta.d2 - d2) <= 1e-9);
    CHECK(e.residual <= 1e-9);
  }
}

TEST_CASE("sub-pixel shift of the 709x709 circle", "[estimate]") {
  const Frame f = render_circle(709, 709, {354.0, 354.0, 120.0, 4.0, 255.0});
  const ShiftEstimate e = estimate_shift(f, subpixel_shift_real(f, {0.3, -0.2}));
  CHECK(std::abs(e.delta.d1 - 0.3) <= 1e-3);
  CHECK(std::abs(e.delta.d2 + 0.2) <= 1e-3);
  CHECK(e.reliable());
}

TEST_CASE("integer circular shifts are recovered", "[estimate]") {
  std::mt19937_64 rng(2);
  const Frame f = quantize(smooth_frame(96, 72, rng));
  const ShiftEstimate e = estimate_shift(f, circular_shift(f, 1, -1));
  CHECK(std::abs(e.delta.d1 - 1.0) <= 1e-6);
  CHECK(std::abs(e.delta.d2 + 1.0) <= 1e-6);
}

TEST_CASE("estimator consistency on random smooth frames", "[estimate][property]") {
  std::mt19937_64 rng(20240101);
  std::uniform_real_distribution<double> shift(-0.5, 0.5);
  for (int trial = 0; trial < 20; ++trial) {
    const Frame f = phasemag::testing::sigmoid_disc_frame(rng, 256, 512, 2.0, 8.0);
    const ShiftVector d{shift(rng), shift(rng)};
    INFO(f.height() << "x" << f.width() << " delta=(" << d.d1 << "," << d.d2 << ")");

    const ShiftEstimate real = estimate_shift(f, subpixel_shift_real(f, d));
    CHECK(std::abs(real.delta.d1 - d.d1) <= 1e-2);
    CHECK(std::abs(real.delta.d2 - d.d2) <= 1e-2);

    const ShiftEstimate eight = estimate_shift(quantize(f), subpixel_shift(f, d));
    CHECK(std::abs(eight.delta.d1 - d.d1) <= 5e-2);
    CHECK(std::abs(eight.delta.d2 - d.d2) <= 5e-2);
  }
}

TEST_CASE("magnification closes the loop through the estimator", "[estimate][magnify][property]") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> alpha(1.0, 40.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  // keep |(1 + alpha) delta| < 2
  auto draw = [&](double a) {
    return ShiftVector{1.9 * unit(rng) / (1.0 + a), 1.9 * unit(rng) / (1.0 + a)};
  };

  SECTION("real-valued frames") {
    for (int trial = 0; trial < 10; ++trial) {
      const Frame f = phasemag::testing::sigmoid_disc_frame(rng, 96, 192, 2.0, 8.0);
      const double a = alpha(rng);
      const ShiftVector d = draw(a);
      const Frame out = magnify_pair_unquantized(f, subpixel_shift_real(f, d), {a}).frame;
      const ShiftEstimate e = estimate_shift(f, out);
      INFO(f.height() << "x" << f.width() << " alpha=" << a);
      CHECK(std::abs(e.delta.d1 - (1.0 + a) * d.d1) <= 5e-2);
      CHECK(std::abs(e.delta.d2 - (1.0 + a) * d.d2) <= 5e-2);
    }
  }
  SECTION("8-bit magnified output") {
    for (int trial = 0; trial < 10; ++trial) {
      const Frame f = phasemag::testing::sigmoid_disc_frame(rng, 256, 512, 2.0, 4.0);
      const double a = alpha(rng);
      const ShiftVector d = draw(a);
      const Frame out = magnify_pair(f, subpixel_shift_real(f, d), {a});
      const ShiftEstimate e = estimate_shift(f, out);
      INFO(f.height() << "x" << f.width() << " alpha=" << a);
      CHECK(std::abs(e.delta.d1 - (1.0 + a) * d.d1) <= 5e-2);
      CHECK(std::abs(e.delta.d2 - (1.0 + a) * d.d2) <= 5e-2);
    }
  }
}

TEST_CASE("unrelated frames are flagged as unreliable", "[estimate]") {
  const Frame a = quantize(render_circle(96, 96, {30.0, 30.0, 15.0, 3.0, 255.0}));
  const Frame b = quantize(render_circle(96, 96, {60.0, 70.0, 25.0, 2.0, 180.0}));
  const ShiftEstimate e = estimate_shift(a, b);
  CHECK(e.residual > kUnreliableResidual);
  CHECK_FALSE(e.reliable());
}

TEST_CASE("estimator error contract", "[estimate]") {
  std::mt19937_64 rng(9);
  const Frame f = quantize(smooth_frame(32, 32, rng));
  CHECK(error_kind_of([&] { (void)estimate_shift(f, f, 0.0); }) == ErrorKind::invalid_argument);
  CHECK(error_kind_of([&] { (void)estimate_shift(f, f, 0.6); }) == ErrorKind::invalid_argument);
  CHECK(error_kind_of([&] { (void)estimate_shift(f, Frame(32, 31)); }) == ErrorKind::size_mismatch);
  CHECK(error_kind_of([&] { (void)estimate_shift(Frame(2, 2, 9.0), Frame(2, 2, 9.0), 0.5); }) ==
        ErrorKind::insufficient_data);
  CHECK(error_kind_of([&] { (void)estimate_shift(Frame(32, 32, 50.0), Frame(32, 32, 50.0)); }) ==
        ErrorKind::insufficient_data);
  // band too narrow to contain any non-DC bin
  CHECK(error_kind_of([&] { (void)estimate_shift(f, f, 0.01); }) == ErrorKind::insufficient_data);
}
