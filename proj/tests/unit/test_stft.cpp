#include <doctest.h>

#include <cmath>
#include <vector>

#include "../support/oracles.hpp"
#include "bcdr/reference.hpp"
#include "bcdr/stft.hpp"
#include "bcdr/synth.hpp"

using namespace bcdr;

TEST_CASE("DC signal, rectangular window: all energy in bin 0") {
  const std::vector<double> ones(512, 1.0);
  const Spectrogram s = analyze(ones, 512, 128, 16000, Window::rectangular);
  CHECK(s.num_frames == 1);
  CHECK(s.at(0, 0).real() == doctest::Approx(512.0));
  CHECK(std::abs(s.at(0, 0).imag()) < 1e-9);
  for (std::size_t b = 1; b < s.num_bins; ++b) CHECK(std::abs(s.at(0, b)) < 1e-9);
}

TEST_CASE("bin-centered sinusoid concentrates where the window mainlobe says") {
  std::vector<double> x(512);
  for (int n = 0; n < 512; ++n) x[n] = std::sin(2.0 * kPi * 10.0 * n / 512.0);

  // Rectangular window, integer periods: a single bin takes everything.
  const Spectrogram rect = analyze(x, 512, 128, 16000, Window::rectangular);
  double total = 0.0;
  for (std::size_t b = 0; b < rect.num_bins; ++b) total += std::norm(rect.at(0, b));
  CHECK(std::norm(rect.at(0, 10)) / total > 0.9999);

  // Periodic Hann: the 3-bin mainlobe holds everything; the center bin
  // alone carries 2/3 of it (expected values taken from the direct DFT).
  const Spectrogram ref = reference::analyze(x, 512, 128, 16000, Window::hann_periodic);
  double ref_total = 0.0;
  for (std::size_t b = 0; b < ref.num_bins; ++b) ref_total += std::norm(ref.at(0, b));
  const double mainlobe =
      std::norm(ref.at(0, 9)) + std::norm(ref.at(0, 10)) + std::norm(ref.at(0, 11));
  CHECK(mainlobe / ref_total > 0.999);
  CHECK(std::norm(ref.at(0, 10)) / ref_total == doctest::Approx(2.0 / 3.0).epsilon(1e-3));

  // FFT path agrees with the direct DFT.
  const Spectrogram fast = analyze(x, 512, 128, 16000, Window::hann_periodic);
  for (std::size_t b = 0; b < fast.num_bins; ++b)
    CHECK(std::abs(fast.at(0, b) - ref.at(0, b)) < 1e-8);
}

TEST_CASE("frame count") {
  const std::vector<double> x(512 + 5 * 128, 0.0);
  CHECK(analyze(x, 512, 128, 16000).num_frames == 6);

  const std::vector<double> exact(512, 0.0);
  CHECK(analyze(exact, 512, 128, 16000).num_frames == 1);

  // tail shorter than a hop still yields one padded frame
  const std::vector<double> tail(512 + 130, 0.0);
  CHECK(analyze(tail, 512, 128, 16000).num_frames == 3);

  const std::vector<double> tiny(100, 0.0);
  CHECK_THROWS_AS(analyze(tiny, 512, 128, 16000), std::invalid_argument);
}

TEST_CASE("round trip reconstructs the interior") {
  const std::vector<double> x = white_noise(16000, 11);
  const Spectrogram s = analyze(x, 512, 128, 16000);
  const std::vector<double> y = synthesize(s);
  CHECK(y.size() == (s.num_frames - 1) * 128 + 512);
  CHECK(oracles::interior_snr_db(x, y, 512) > 50.0);
  CHECK(oracles::interior_snr_db(x, y, 512) > 250.0);  // in practice machine precision
}

TEST_CASE("zero spectrogram synthesizes to silence") {
  Spectrogram s;
  s.num_frames = 4;
  s.num_bins = 257;
  s.frame_len = 512;
  s.hop = 128;
  s.sample_rate = 16000;
  s.coeff.assign(s.num_frames * s.num_bins, {0.0, 0.0});
  for (double v : synthesize(s)) CHECK(v == 0.0);
}

TEST_CASE("analysis is linear") {
  const std::vector<double> x = white_noise(4096, 1);
  const std::vector<double> y = white_noise(4096, 2);
  const double a = 1.7, b = -0.3;
  std::vector<double> mix(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mix[i] = a * x[i] + b * y[i];

  const Spectrogram sx = analyze(x, 512, 128, 16000);
  const Spectrogram sy = analyze(y, 512, 128, 16000);
  const Spectrogram sm = analyze(mix, 512, 128, 16000);
  double scale = 0.0;
  for (const auto& c : sm.coeff) scale = std::max(scale, std::abs(c));
  for (std::size_t i = 0; i < sm.coeff.size(); ++i)
    CHECK(std::abs(sm.coeff[i] - (a * sx.coeff[i] + b * sy.coeff[i])) < 1e-10 * scale);
}

TEST_CASE("non-power-of-two frame lengths work") {
  const std::vector<double> x = white_noise(4000, 3);
  const Spectrogram s = analyze(x, 400, 100, 16000);
  const std::vector<double> y = synthesize(s);
  CHECK(oracles::interior_snr_db(x, std::span<const double>(y).subspan(0, x.size()), 400) > 50.0);
}
