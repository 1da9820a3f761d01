#include "bcdr/stft.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"

namespace bcdr {

std::vector<double> make_window(int frame_len, Window window) {
  std::vector<double> w(frame_len, 1.0);
  if (window == Window::hann_periodic) {
    for (int n = 0; n < frame_len; ++n)
      w[n] = 0.5 * (1.0 - std::cos(2.0 * kPi * n / frame_len));
  }
  return w;
}

namespace {

// Squared-window sum over the infinite frame tiling, periodic in hop.
std::vector<double> periodic_window_norm(const std::vector<double>& w, int hop) {
  std::vector<double> norm(hop, 0.0);
  const int frame_len = static_cast<int>(w.size());
  for (int r = 0; r < hop; ++r)
    for (int t = r; t < frame_len; t += hop) norm[r] += w[t] * w[t];
  return norm;
}

}  // namespace

Spectrogram analyze(std::span<const double> signal, int frame_len, int hop,
                    int sample_rate, Window window) {
  if (frame_len <= 0 || hop <= 0 || hop > frame_len)
    throw std::invalid_argument("need 0 < hop <= frame_len");
  if (signal.size() < static_cast<std::size_t>(frame_len))
    throw std::invalid_argument("signal shorter than one frame");

  const std::size_t tail = signal.size() - frame_len;
  const std::size_t num_frames = 1 + (tail + hop - 1) / hop;

  Spectrogram spec;
  spec.num_frames = num_frames;
  spec.num_bins = frame_len / 2 + 1;
  spec.frame_len = frame_len;
  spec.hop = hop;
  spec.sample_rate = sample_rate;
  spec.window = window;
  spec.coeff.resize(num_frames * spec.num_bins);

  const std::vector<double> w = make_window(frame_len, window);
  const RealFft fft(frame_len);

#pragma omp parallel
  {
    std::vector<double> buf(frame_len);
#pragma omp for schedule(static)
    for (std::size_t k = 0; k < num_frames; ++k) {
      const std::size_t off = k * hop;
      for (int n = 0; n < frame_len; ++n) {
        const std::size_t t = off + n;
        buf[n] = t < signal.size() ? signal[t] * w[n] : 0.0;
      }
      fft.forward(buf.data(), &spec.coeff[k * spec.num_bins]);
    }
  }
  return spec;
}

std::vector<double> synthesize(const Spectrogram& spec) {
  if (spec.num_frames == 0 || spec.frame_len <= 0 || spec.hop <= 0)
    throw std::invalid_argument("malformed spectrogram");
  if (spec.num_bins != static_cast<std::size_t>(spec.frame_len / 2 + 1))
    throw std::invalid_argument("bin count inconsistent with frame length");

  const int frame_len = spec.frame_len;
  const int hop = spec.hop;
  const std::size_t num_frames = spec.num_frames;
  const std::size_t out_len = (num_frames - 1) * hop + frame_len;

  const std::vector<double> w = make_window(frame_len, spec.window);
  const std::vector<double> norm = periodic_window_norm(w, hop);
  const RealFft fft(frame_len);

  // Stage 1: per-frame inverse transforms (independent).
  std::vector<double> frames(num_frames * frame_len);
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < num_frames; ++k)
    fft.inverse(&spec.coeff[k * spec.num_bins], &frames[k * frame_len]);

  // Stage 2: overlap-add into hop-aligned output blocks so writers never
  // overlap.
  std::vector<double> out(out_len, 0.0);
  const std::size_t num_blocks = (out_len + hop - 1) / hop;
  const std::size_t frames_per_block = frame_len / hop;
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < num_blocks; ++j) {
    const std::size_t k_lo = j >= frames_per_block ? j - frames_per_block + 1 : 0;
    const std::size_t k_hi = std::min(num_frames - 1, j);
    const std::size_t t_end = std::min(out_len, (j + 1) * hop);
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
      const double* fr = &frames[k * frame_len];
      for (std::size_t t = j * hop; t < t_end; ++t) {
        const std::size_t n = t - k * hop;
        if (n < static_cast<std::size_t>(frame_len)) out[t] += w[n] * fr[n];
      }
    }
  }

#pragma omp parallel for schedule(static)
  for (std::size_t t = 0; t < out_len; ++t) {
    const double d = norm[t % hop];
    out[t] = d > 1e-12 ? out[t] / d : 0.0;
  }
  return out;
}

}  // namespace bcdr
