#pragma once

#include <span>

#include "bcdr/cdr.hpp"
#include "bcdr/coherence.hpp"
#include "bcdr/stft.hpp"
#include "bcdr/types.hpp"

// Straightforward single-threaded counterparts of the parallel kernels.
// analyze/synthesize evaluate the DFT directly (O(n^2)), so they double as
// an FFT-independent oracle; the others share the math of the parallel
// versions but run plain serial loops. The benchmark tool compares the two
// families.
namespace bcdr::reference {

Spectrogram analyze(std::span<const double> signal, int frame_len, int hop,
                    int sample_rate, Window window = Window::hann_periodic);

std::vector<double> synthesize(const Spectrogram& spec);

CoherenceTrack estimate_coherence(const Spectrogram& left, const Spectrogram& right,
                                  double lambda);

RealGrid cdr_grid(const CoherenceTrack& track, const PipelineConfig& config);

std::pair<Spectrogram, Spectrogram> apply_gain_stereo(const Spectrogram& left,
                                                      const Spectrogram& right,
                                                      const GainMask& mask);

}  // namespace bcdr::reference
