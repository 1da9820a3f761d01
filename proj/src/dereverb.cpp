#include "bcdr/dereverb.hpp"

#include <cmath>

namespace bcdr {

double gain_from_cdr(double cdr_linear, double mu, double gmin) {
  const double g = 1.0 - std::sqrt(mu / (std::max(cdr_linear, 0.0) + 1.0));
  return std::min(std::max(g, gmin), 1.0);
}

GainMask gain_mask_from_cdr(const RealGrid& cdr, double mu, double gmin, bool smooth) {
  GainMask mask(cdr.num_frames, cdr.num_bins);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < cdr.values.size(); ++i)
    mask.values[i] = gain_from_cdr(cdr.values[i], mu, gmin);
  if (smooth) {
#pragma omp parallel for schedule(static)
    for (std::size_t b = 0; b < mask.num_bins; ++b)
      for (std::size_t k = 1; k < mask.num_frames; ++k)
        mask.at(k, b) = 0.5 * mask.at(k - 1, b) + 0.5 * mask.at(k, b);
  }
  return mask;
}

std::pair<Spectrogram, Spectrogram> apply_gain_stereo(const Spectrogram& left,
                                                      const Spectrogram& right,
                                                      const GainMask& mask) {
  if (!left.same_shape(right)) throw std::invalid_argument("spectrogram shapes differ");
  if (mask.num_frames != left.num_frames || mask.num_bins != left.num_bins)
    throw std::invalid_argument("mask shape does not match spectrograms");
  std::pair<Spectrogram, Spectrogram> out{left, right};
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < mask.values.size(); ++i) {
    out.first.coeff[i] *= mask.values[i];
    out.second.coeff[i] *= mask.values[i];
  }
  return out;
}

ProcessResult process_detailed(const StereoSignal& input, const PipelineConfig& config) {
  input.validate();
  config.validate();

  const Spectrogram left =
      analyze(input.left, config.frame_len, config.hop, input.sample_rate);
  const Spectrogram right =
      analyze(input.right, config.frame_len, config.hop, input.sample_rate);
  const CoherenceTrack track = estimate_coherence(left, right, config.forgetting);

  ProcessResult result;
  result.cdr = cdr_grid(track, config);
  result.mask = gain_mask_from_cdr(result.cdr, config.mu, config.gmin,
                                   config.gain_smoothing);
  auto [out_left, out_right] = apply_gain_stereo(left, right, result.mask);

  result.output.sample_rate = input.sample_rate;
  result.output.left = synthesize(out_left);
  result.output.right = synthesize(out_right);
  result.output.left.resize(input.left.size());
  result.output.right.resize(input.right.size());
  result.frame_len = config.frame_len;
  result.hop = config.hop;
  result.sample_rate = input.sample_rate;
  return result;
}

StereoSignal process(const StereoSignal& input, const PipelineConfig& config) {
  return process_detailed(input, config).output;
}

}  // namespace bcdr
