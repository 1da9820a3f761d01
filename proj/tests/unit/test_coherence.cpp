#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "bcdr/coherence.hpp"
#include "bcdr/synth.hpp"

using namespace bcdr;

namespace {

Spectrogram noise_spec(std::uint64_t seed, std::size_t samples = 16000) {
  return analyze(white_noise(samples, seed), 512, 128, 16000);
}

}  // namespace

TEST_CASE("identical channels give coherence one") {
  const Spectrogram s = noise_spec(5);
  const CoherenceTrack t = estimate_coherence(s, s, 0.68);
  for (std::size_t k = 0; k < t.num_frames; ++k)
    for (std::size_t b = 0; b < t.num_bins; ++b) {
      if (t.phi_ll[k * t.num_bins + b] * t.phi_rr[k * t.num_bins + b] < 1e-20) continue;
      CHECK(t.gamma_at(k, b).real() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(t.gamma_at(k, b).imag() == 0.0);
    }
}

TEST_CASE("negated right channel gives coherence minus one") {
  const Spectrogram s = noise_spec(6);
  Spectrogram neg = s;
  for (auto& c : neg.coeff) c = -c;
  const CoherenceTrack t = estimate_coherence(s, neg, 0.68);
  for (std::size_t k = 0; k < t.num_frames; k += 7)
    for (std::size_t b = 0; b < t.num_bins; b += 13)
      CHECK(t.gamma_at(k, b).real() == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("scaling both channels by a power of two leaves gamma bit-identical") {
  const Spectrogram l = noise_spec(7);
  const Spectrogram r = noise_spec(8);
  Spectrogram l4 = l, r4 = r;
  for (auto& c : l4.coeff) c *= 4.0;
  for (auto& c : r4.coeff) c *= 4.0;
  const CoherenceTrack a = estimate_coherence(l, r, 0.68);
  const CoherenceTrack b = estimate_coherence(l4, r4, 0.68);
  for (std::size_t i = 0; i < a.gamma.size(); ++i) CHECK(a.gamma[i] == b.gamma[i]);
}

TEST_CASE("swapping channels conjugates gamma") {
  const Spectrogram l = noise_spec(9);
  const Spectrogram r = noise_spec(10);
  const CoherenceTrack a = estimate_coherence(l, r, 0.68);
  const CoherenceTrack b = estimate_coherence(r, l, 0.68);
  for (std::size_t i = 0; i < a.gamma.size(); ++i)
    CHECK(a.gamma[i] == std::conj(b.gamma[i]));
}

TEST_CASE("magnitude bound and Cauchy-Schwarz hold on random input") {
  const CoherenceTrack t = estimate_coherence(noise_spec(11), noise_spec(12), 0.9);
  for (std::size_t i = 0; i < t.gamma.size(); ++i) {
    CHECK(std::abs(t.gamma[i]) <= 1.0 + 1e-15);
    CHECK(std::norm(t.phi_lr[i]) <=
          t.phi_ll[i] * t.phi_rr[i] * (1.0 + 1e-12) + 1e-30);
  }
}

TEST_CASE("independent channels decorrelate with averaging") {
  // 10 s of independent noise. With the short default time constant
  // (lambda = 0.68) the per-frame estimate keeps substantial variance, so
  // the per-bin time-median of |gamma| sits near 0.5; heavier smoothing
  // pushes it down. Both levels are pinned from a fixed-seed run.
  const Spectrogram l = noise_spec(13, 160000);
  const Spectrogram r = noise_spec(14, 160000);

  auto worst_median = [&](double lambda) {
    const CoherenceTrack t = estimate_coherence(l, r, lambda);
    double worst = 0.0;
    for (std::size_t b = 0; b < t.num_bins; ++b) {
      if (t.bin_hz(b) <= 500.0) continue;
      std::vector<double> mags(t.num_frames);
      for (std::size_t k = 0; k < t.num_frames; ++k) mags[k] = std::abs(t.gamma_at(k, b));
      worst = std::max(worst, oracles::median(std::move(mags)));
    }
    return worst;
  };

  CHECK(worst_median(0.68) < 0.6);
  CHECK(worst_median(0.95) < 0.25);
}

TEST_CASE("zero-power bins yield gamma zero") {
  Spectrogram l, r;
  l.num_frames = r.num_frames = 3;
  l.num_bins = r.num_bins = 5;
  l.frame_len = r.frame_len = 8;
  l.hop = r.hop = 4;
  l.sample_rate = r.sample_rate = 16000;
  l.coeff.assign(15, {0.0, 0.0});
  r.coeff.assign(15, {0.0, 0.0});
  const CoherenceTrack t = estimate_coherence(l, r, 0.68);
  for (const auto& g : t.gamma) CHECK(g == std::complex<double>{0.0, 0.0});
}

TEST_CASE("shape mismatch is rejected") {
  const Spectrogram a = noise_spec(15, 4096);
  const Spectrogram b = noise_spec(16, 8192);
  CHECK_THROWS_AS(estimate_coherence(a, b, 0.68), std::invalid_argument);
  CHECK_THROWS_AS(estimate_coherence(a, a, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(estimate_coherence(a, a, 0.0), std::invalid_argument);
}
