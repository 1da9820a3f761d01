#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "bcdr/cdr.hpp"
#include "bcdr/spatial.hpp"
#include "bcdr/synth.hpp"

using namespace bcdr;

namespace {
const Geometry kGeo{0.17, 343.0};
}

TEST_CASE("mix_coherence endpoints") {
  const std::complex<double> gc = std::polar(1.0, 0.8);
  CHECK(mix_coherence(0.0, gc, 0.4) == std::complex<double>{0.4, 0.0});
  CHECK(mix_coherence(1e13, gc, 0.4) == gc);
  CHECK(mix_coherence(1.0, {1.0, 0.0}, 0.0) == std::complex<double>{0.5, 0.0});
  CHECK_THROWS_AS(mix_coherence(-0.1, gc, 0.0), std::invalid_argument);
}

TEST_CASE("directional estimators invert the forward model exactly") {
  for (double phase : {0.0, 0.3, 1.1, 2.9, -2.0})
    for (double gd : {-0.4, 0.0, 0.3, 0.9}) {
      EstimatorInputs in;
      in.gamma_coh = std::polar(1.0, phase);
      in.gamma_diff = gd;
      in.gamma_x = mix_coherence(10.0, in.gamma_coh, gd);
      CHECK(estimate_cdr_directional(Estimator::schwarz1, in).linear ==
            doctest::Approx(10.0).epsilon(1e-9));
      CHECK(estimate_cdr_directional(Estimator::schwarz2, in).linear ==
            doctest::Approx(10.0).epsilon(1e-9));
    }
}

TEST_CASE("exact inversion property over eta in [0, 100]") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> eta_dist(0.0, 100.0);
  std::uniform_real_distribution<double> phase_dist(-kPi, kPi);
  std::uniform_real_distribution<double> gd_dist(-0.95, 0.95);
  for (int trial = 0; trial < 2000; ++trial) {
    const double eta = eta_dist(rng);
    EstimatorInputs in;
    in.gamma_coh = std::polar(1.0, phase_dist(rng));
    in.gamma_diff = gd_dist(rng);
    // Skip configurations the contract excludes: desired and diffuse
    // models nearly equal.
    if (std::abs(in.gamma_coh - std::complex<double>{in.gamma_diff, 0.0}) < 1e-6) continue;
    in.gamma_x = mix_coherence(eta, in.gamma_coh, in.gamma_diff);
    const double tol = 1e-6 * std::max(eta, 1.0);
    CHECK(std::abs(estimate_cdr_directional(Estimator::schwarz1, in).linear - eta) <= tol);
    CHECK(std::abs(estimate_cdr_directional(Estimator::schwarz2, in).linear - eta) <= tol);
    CHECK(std::abs(estimate_cdr_blind(Estimator::schwarz3, in).linear - eta) <= tol);
  }
}

TEST_CASE("gamma_x equal to the diffuse model reads as zero CDR") {
  EstimatorInputs in;
  in.gamma_coh = std::polar(1.0, 0.5);
  in.gamma_diff = 0.6;
  in.gamma_x = {0.6, 0.0};
  CHECK(estimate_cdr_directional(Estimator::schwarz1, in).linear == 0.0);
  CHECK(estimate_cdr_directional(Estimator::schwarz2, in).linear == 0.0);
  CHECK(estimate_cdr_blind(Estimator::thiergart2, in).linear == 0.0);
  CHECK(estimate_cdr_blind(Estimator::schwarz3, in).linear ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("thiergart2 recovers the CDR exactly for zero diffuse coherence") {
  for (double eta : {0.1, 1.0, 4.0, 10.0})
    for (int i = 0; i <= 8; ++i) {
      const double phi = i * kPi / 8.0;
      EstimatorInputs in;
      in.gamma_diff = 0.0;
      in.gamma_x = std::polar(eta / (eta + 1.0), phi);
      CHECK(estimate_cdr_blind(Estimator::thiergart2, in).linear ==
            doctest::Approx(eta).epsilon(1e-9));
    }
}

TEST_CASE("schwarz3 round trip over the documented grid") {
  for (double eta : {0.1, 1.0, 10.0})
    for (double gd : {-0.3, 0.0, 0.5})
      for (int i = 0; i < 16; ++i) {
        const double phi = -kPi + i * (2.0 * kPi / 16.0);
        EstimatorInputs in;
        in.gamma_diff = gd;
        in.gamma_x = mix_coherence(eta, std::polar(1.0, phi), gd);
        CHECK(estimate_cdr_blind(Estimator::schwarz3, in).linear ==
              doctest::Approx(eta).epsilon(1e-6));
      }
}

TEST_CASE("free-field estimator fed a binaural mixture underestimates hard") {
  // eta_in = 20 dB at theta = 90 deg, f = 2 kHz.
  const double theta = kPi / 2.0, f = 2000.0;
  EstimatorInputs in;
  in.gamma_x = mix_coherence(100.0, desired_coherence(theta, f, kGeo, FieldModel::binaural),
                             diffuse_coherence(f, kGeo, DiffuseModel::binaural));
  in.gamma_coh = desired_coherence(theta, f, kGeo, FieldModel::free_field);
  in.gamma_diff = diffuse_coherence(f, kGeo, DiffuseModel::sinc);
  const CdrValue est = estimate_cdr_directional(Estimator::schwarz2, in);
  CHECK(est.db <= 15.0);  // at least 5 dB below the 20 dB input
  CHECK(est.db == doctest::Approx(-1.9378348913).epsilon(1e-6));
}

TEST_CASE("outputs stay within [0, cap] and finite on adversarial input") {
  std::mt19937 rng(123);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5000; ++trial) {
    EstimatorInputs in;
    in.gamma_coh = std::polar(1.0, u(rng) * kPi);
    in.gamma_diff = u(rng);
    in.gamma_x = {u(rng), u(rng)};
    if (std::abs(in.gamma_x) > 1.0) in.gamma_x /= std::abs(in.gamma_x);
    for (Estimator e : {Estimator::schwarz1, Estimator::schwarz2, Estimator::thiergart2,
                        Estimator::schwarz3}) {
      const CdrValue v = estimate_cdr(e, in);
      CHECK(std::isfinite(v.linear));
      CHECK(v.linear >= 0.0);
      CHECK(v.linear <= kDefaultCapLinear);
    }
  }
  // Degenerate corners: fully coherent observation, zero coherence.
  EstimatorInputs corner;
  corner.gamma_coh = {1.0, 0.0};
  corner.gamma_diff = 0.3;
  corner.gamma_x = {1.0, 0.0};
  CHECK(estimate_cdr(Estimator::schwarz1, corner).linear == kDefaultCapLinear);
  CHECK(estimate_cdr(Estimator::schwarz2, corner).linear == kDefaultCapLinear);
  corner.gamma_x = {0.0, 0.0};
  for (Estimator e : {Estimator::thiergart2, Estimator::schwarz3})
    CHECK(std::isfinite(estimate_cdr(e, corner).linear));
}

TEST_CASE("schwarz magnitude estimate dominates the real part under a shared denominator") {
  // With the common real denominator D = Re{Gc* Gx} - 1 and
  // z = Gc*(Gd - Gx)/D, |z| >= Re{z} always; schwarz2's complex-denominator
  // magnitude is bounded by |z| in turn since |Gc* Gx - 1| >= |D|.
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    EstimatorInputs in;
    in.gamma_coh = std::polar(1.0, u(rng) * kPi);
    in.gamma_diff = u(rng);
    in.gamma_x = std::polar(std::abs(u(rng)), u(rng) * kPi);
    const double d = (std::conj(in.gamma_coh) * in.gamma_x).real() - 1.0;
    if (std::abs(d) < 1e-6) continue;
    const std::complex<double> z = std::conj(in.gamma_coh) *
                                   (in.gamma_diff - in.gamma_x) / d;
    const double s1_raw = z.real();
    CHECK(std::abs(z) >= s1_raw - 1e-12);
    CHECK(estimate_cdr_directional(Estimator::schwarz2, in).linear <=
          std::abs(z) * (1.0 + 1e-12) + 1e-12);
  }
}

TEST_CASE("cdr_grid on a frontal plane wave saturates near the cap") {
  const std::vector<double> src = white_noise(32000, 42);
  const StereoSignal s = gen_plane_wave(src, 0.0, kGeo, FieldModel::binaural, 16000);
  const Spectrogram l = analyze(s.left, 512, 128, 16000);
  const Spectrogram r = analyze(s.right, 512, 128, 16000);
  const CoherenceTrack t = estimate_coherence(l, r, 0.68);

  PipelineConfig cfg;
  cfg.doa_rad = 0.0;
  const RealGrid grid = cdr_grid(t, cfg);

  std::vector<double> active;
  for (std::size_t k = 4; k < t.num_frames; ++k)
    for (std::size_t b = 1; b < t.num_bins; ++b)
      if (t.phi_ll[k * t.num_bins + b] > 1e-10) active.push_back(grid.at(k, b));
  CHECK(oracles::db10(oracles::median(active)) >= 20.0);
}

TEST_CASE("cdr_grid on generated diffuse noise reads near-zero CDR") {
  FieldSpec spec;
  spec.kind = FieldSpec::Kind::diffuse;
  spec.duration_s = 5.0;
  spec.seed = 21;
  const StereoSignal s = gen_diffuse(spec, kGeo);
  const Spectrogram l = analyze(s.left, 512, 128, 16000);
  const Spectrogram r = analyze(s.right, 512, 128, 16000);
  const CoherenceTrack t = estimate_coherence(l, r, 0.68);

  PipelineConfig cfg;
  cfg.estimator = Estimator::schwarz1;
  cfg.doa_rad = 0.0;
  const RealGrid grid = cdr_grid(t, cfg);
  std::vector<double> high;
  for (std::size_t k = 0; k < t.num_frames; ++k)
    for (std::size_t b = 0; b < t.num_bins; ++b)
      if (t.bin_hz(b) > 1000.0) high.push_back(grid.at(k, b));
  // schwarz1 floors more than half of the diffuse cells at zero.
  CHECK(oracles::median(high) < std::pow(10.0, -0.5));
}

TEST_CASE("unity-coherence track with a matching desired model hits the cap") {
  CoherenceTrack t;
  t.num_frames = 3;
  t.num_bins = 257;
  t.frame_len = 512;
  t.hop = 128;
  t.sample_rate = 16000;
  t.gamma.assign(t.num_frames * t.num_bins, {1.0, 0.0});
  t.phi_ll.assign(t.gamma.size(), 1.0);
  t.phi_rr.assign(t.gamma.size(), 1.0);
  t.phi_lr.assign(t.gamma.size(), {1.0, 0.0});

  PipelineConfig cfg;
  cfg.estimator = Estimator::schwarz2;
  cfg.field_model = FieldModel::free_field;
  cfg.diffuse_model = DiffuseModel::sinc;
  cfg.doa_rad = 0.0;  // desired coherence is exactly one in every bin
  const RealGrid grid = cdr_grid(t, cfg);
  for (double v : grid.values) CHECK(v == cfg.cap_linear());
}
