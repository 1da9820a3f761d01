#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bcdr/types.hpp"

namespace bcdr {

// Description of a synthetic binaural sound field. With a fixed seed the
// generated signals are bit-identical across runs.
struct FieldSpec {
  enum class Kind { plane_wave, diffuse, mixture };
  Kind kind = Kind::mixture;
  double theta_rad = 0.0;  // plane_wave / mixture
  double cdr_db = 0.0;     // mixture
  FieldModel field_model = FieldModel::binaural;
  DiffuseModel diffuse_model = DiffuseModel::binaural;
  double duration_s = 1.0;
  int sample_rate = 16000;
  std::uint64_t seed = 1;
  int frame_len = 512;
  int hop = 128;
  // Calibrate the mixture per bin instead of broadband.
  bool per_bin_calibration = false;
};

// Standard-normal noise from a seeded generator (Box-Muller over a
// mersenne twister, platform-independent).
std::vector<double> white_noise(std::size_t n, std::uint64_t seed);

// Left channel is the source; the right channel is the source passed
// through the all-pass whose per-bin phase is -2*pi*f*tau(theta, f), with
// tau from the chosen field model. Output length equals the source length.
StereoSignal gen_plane_wave(std::span<const double> source, double theta_rad,
                            const Geometry& geo, FieldModel model, int sample_rate,
                            int frame_len = 512, int hop = 128);

// Two noise channels whose long-term coherence per bin matches the target.
// The per-bin mixing uses the square-root factorization of [[1, g], [g, 1]]
// after empirically orthogonalizing the two noise spectra per bin, so the
// sample statistics of the generated pair match the target closely even at
// moderate durations.
StereoSignal gen_diffuse(const FieldSpec& spec, const Geometry& geo);

// Same, with an explicit per-bin coherence target (frame_len/2 + 1 values).
StereoSignal gen_diffuse_with_target(const FieldSpec& spec, const Geometry& geo,
                                     std::span<const double> gamma_target);

struct MixtureParts {
  StereoSignal mixture;
  StereoSignal coherent;
  StereoSignal diffuse;
};

// Plane wave plus scaled diffuse noise; the scale sets the broadband
// coherent-to-diffuse power ratio to spec.cdr_db (per bin instead when
// per_bin_calibration is set). mixture == coherent + diffuse samplewise.
MixtureParts gen_mixture(std::span<const double> source, const FieldSpec& spec,
                         const Geometry& geo);

}  // namespace bcdr
