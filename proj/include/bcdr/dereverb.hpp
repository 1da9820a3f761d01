#pragma once

#include <utility>

#include "bcdr/cdr.hpp"
#include "bcdr/stft.hpp"
#include "bcdr/types.hpp"

namespace bcdr {

// Spectral gain for one CDR value: max(gmin, 1 - sqrt(mu / (cdr + 1))).
// Monotone nondecreasing in cdr, always within [gmin, 1].
double gain_from_cdr(double cdr_linear, double mu, double gmin);

// Gain mask over a whole CDR grid. With smoothing enabled the mask is
// additionally averaged with the previous frame (one-frame recursion).
GainMask gain_mask_from_cdr(const RealGrid& cdr, double mu, double gmin,
                            bool smooth = false);

// Multiplies every coefficient of BOTH channels by the same real gain, so
// interaural phase and level differences are untouched.
std::pair<Spectrogram, Spectrogram> apply_gain_stereo(const Spectrogram& left,
                                                      const Spectrogram& right,
                                                      const GainMask& mask);

struct ProcessResult {
  StereoSignal output;
  RealGrid cdr;  // linear per-bin CDR estimates
  GainMask mask;
  int frame_len = 0;
  int hop = 0;
  int sample_rate = 0;
};

// Full two-channel dereverberation chain: analyze both channels, estimate
// the short-time coherence, map it to CDR, derive the common gain mask and
// resynthesize. Output length equals input length.
ProcessResult process_detailed(const StereoSignal& input, const PipelineConfig& config);
StereoSignal process(const StereoSignal& input, const PipelineConfig& config);

}  // namespace bcdr
