#pragma once

#include <complex>
#include <span>
#include <vector>

#include "bcdr/types.hpp"

namespace bcdr {

// One-sided short-time spectrum, frame-major: coeff[k * num_bins + b].
// Bin b corresponds to frequency b * sample_rate / frame_len.
struct Spectrogram {
  std::size_t num_frames = 0;
  std::size_t num_bins = 0;
  int frame_len = 0;
  int hop = 0;
  int sample_rate = 0;
  Window window = Window::hann_periodic;
  std::vector<std::complex<double>> coeff;

  std::complex<double>& at(std::size_t k, std::size_t b) {
    return coeff[k * num_bins + b];
  }
  std::complex<double> at(std::size_t k, std::size_t b) const {
    return coeff[k * num_bins + b];
  }
  double bin_hz(std::size_t b) const {
    return static_cast<double>(b) * sample_rate / frame_len;
  }
  bool same_shape(const Spectrogram& o) const {
    return num_frames == o.num_frames && num_bins == o.num_bins &&
           frame_len == o.frame_len && hop == o.hop && sample_rate == o.sample_rate;
  }
};

std::vector<double> make_window(int frame_len, Window window);

// Windowed DFT of overlapping frames. The signal must span at least one
// frame; the tail is zero-padded so the final partial frame is processed.
// For (len - frame_len) divisible by hop, the frame count is
// 1 + (len - frame_len) / hop.
Spectrogram analyze(std::span<const double> signal, int frame_len, int hop,
                    int sample_rate, Window window = Window::hann_periodic);

// Weighted overlap-add with normalization by the periodic squared-window
// sum; edge samples where frames are missing come out attenuated rather
// than amplified. Output length is (K - 1) * hop + frame_len.
std::vector<double> synthesize(const Spectrogram& spec);

}  // namespace bcdr
