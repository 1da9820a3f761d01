#pragma once

#include <complex>
#include <vector>

#include "bcdr/stft.hpp"
#include "bcdr/types.hpp"

namespace bcdr {

// Short-time complex coherence estimate with the smoothed auto/cross power
// spectra it was derived from. Same K x B frame-major layout as Spectrogram.
struct CoherenceTrack {
  std::size_t num_frames = 0;
  std::size_t num_bins = 0;
  int frame_len = 0;
  int hop = 0;
  int sample_rate = 0;
  std::vector<std::complex<double>> gamma;   // |gamma| <= 1
  std::vector<std::complex<double>> phi_lr;  // cross spectrum X_L * conj(X_R)
  std::vector<double> phi_ll;
  std::vector<double> phi_rr;

  std::complex<double> gamma_at(std::size_t k, std::size_t b) const {
    return gamma[k * num_bins + b];
  }
  double bin_hz(std::size_t b) const {
    return static_cast<double>(b) * sample_rate / frame_len;
  }
};

// Recursive averaging of the instantaneous auto/cross power products:
//   phi(k) = lambda * phi(k-1) + (1 - lambda) * inst(k),   phi(0) = inst(0),
// then gamma = phi_lr / sqrt(phi_ll * phi_rr), magnitude-clamped to 1.
// Bins whose power product underflows 1e-20 yield gamma = 0.
CoherenceTrack estimate_coherence(const Spectrogram& left, const Spectrogram& right,
                                  double lambda);

}  // namespace bcdr
