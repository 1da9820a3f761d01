#include "bcdr/reference.hpp"

#include <cmath>

#include "bcdr/dereverb.hpp"
#include "bcdr/spatial.hpp"

namespace bcdr::reference {

namespace {

void dft(const std::vector<double>& frame, std::complex<double>* out, std::size_t bins) {
  const std::size_t n = frame.size();
  for (std::size_t b = 0; b < bins; ++b) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t t = 0; t < n; ++t) {
      const double ang = -2.0 * kPi * static_cast<double>(b) * static_cast<double>(t) /
                         static_cast<double>(n);
      acc += frame[t] * std::complex<double>{std::cos(ang), std::sin(ang)};
    }
    out[b] = acc;
  }
}

std::vector<double> inverse_dft(const std::complex<double>* in, int n) {
  const int bins = n / 2 + 1;
  std::vector<double> out(n, 0.0);
  for (int t = 0; t < n; ++t) {
    double acc = 0.0;
    for (int b = 0; b < bins; ++b) {
      const double ang = 2.0 * kPi * b * t / n;
      const double term = in[b].real() * std::cos(ang) - in[b].imag() * std::sin(ang);
      // One-sided spectrum: interior bins stand for a conjugate pair.
      acc += (b == 0 || b == n - b) ? term : 2.0 * term;
    }
    out[t] = acc / n;
  }
  return out;
}

}  // namespace

Spectrogram analyze(std::span<const double> signal, int frame_len, int hop,
                    int sample_rate, Window window) {
  if (frame_len <= 0 || hop <= 0 || hop > frame_len)
    throw std::invalid_argument("need 0 < hop <= frame_len");
  if (signal.size() < static_cast<std::size_t>(frame_len))
    throw std::invalid_argument("signal shorter than one frame");

  Spectrogram spec;
  spec.num_frames = 1 + (signal.size() - frame_len + hop - 1) / hop;
  spec.num_bins = frame_len / 2 + 1;
  spec.frame_len = frame_len;
  spec.hop = hop;
  spec.sample_rate = sample_rate;
  spec.window = window;
  spec.coeff.resize(spec.num_frames * spec.num_bins);

  const std::vector<double> w = make_window(frame_len, window);
  std::vector<double> buf(frame_len);
  for (std::size_t k = 0; k < spec.num_frames; ++k) {
    for (int n = 0; n < frame_len; ++n) {
      const std::size_t t = k * hop + n;
      buf[n] = t < signal.size() ? signal[t] * w[n] : 0.0;
    }
    dft(buf, &spec.coeff[k * spec.num_bins], spec.num_bins);
  }
  return spec;
}

std::vector<double> synthesize(const Spectrogram& spec) {
  const int frame_len = spec.frame_len;
  const int hop = spec.hop;
  const std::size_t out_len = (spec.num_frames - 1) * hop + frame_len;
  const std::vector<double> w = make_window(frame_len, spec.window);

  std::vector<double> norm(hop, 0.0);
  for (int r = 0; r < hop; ++r)
    for (int t = r; t < frame_len; t += hop) norm[r] += w[t] * w[t];

  std::vector<double> out(out_len, 0.0);
  for (std::size_t k = 0; k < spec.num_frames; ++k) {
    const std::vector<double> frame = inverse_dft(&spec.coeff[k * spec.num_bins], frame_len);
    for (int n = 0; n < frame_len; ++n) out[k * hop + n] += w[n] * frame[n];
  }
  for (std::size_t t = 0; t < out_len; ++t) {
    const double d = norm[t % hop];
    out[t] = d > 1e-12 ? out[t] / d : 0.0;
  }
  return out;
}

CoherenceTrack estimate_coherence(const Spectrogram& left, const Spectrogram& right,
                                  double lambda) {
  if (!left.same_shape(right)) throw std::invalid_argument("spectrogram shapes differ");
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("lambda must lie in (0, 1)");

  CoherenceTrack track;
  track.num_frames = left.num_frames;
  track.num_bins = left.num_bins;
  track.frame_len = left.frame_len;
  track.hop = left.hop;
  track.sample_rate = left.sample_rate;
  const std::size_t cells = track.num_frames * track.num_bins;
  track.gamma.resize(cells);
  track.phi_lr.resize(cells);
  track.phi_ll.resize(cells);
  track.phi_rr.resize(cells);

  for (std::size_t b = 0; b < track.num_bins; ++b) {
    double pll = 0.0, prr = 0.0;
    std::complex<double> plr{0.0, 0.0};
    for (std::size_t k = 0; k < track.num_frames; ++k) {
      const std::complex<double> xl = left.at(k, b);
      const std::complex<double> xr = right.at(k, b);
      const std::complex<double> ilr = xl * std::conj(xr);
      if (k == 0) {
        pll = std::norm(xl);
        prr = std::norm(xr);
        plr = ilr;
      } else {
        pll = lambda * pll + (1.0 - lambda) * std::norm(xl);
        prr = lambda * prr + (1.0 - lambda) * std::norm(xr);
        plr = lambda * plr + (1.0 - lambda) * ilr;
      }
      const std::size_t idx = k * track.num_bins + b;
      track.phi_ll[idx] = pll;
      track.phi_rr[idx] = prr;
      track.phi_lr[idx] = plr;
      std::complex<double> g{0.0, 0.0};
      if (pll * prr >= 1e-20) {
        g = plr / std::sqrt(pll * prr);
        const double mag = std::abs(g);
        if (mag > 1.0) g /= mag;
      }
      track.gamma[idx] = g;
    }
  }
  return track;
}

RealGrid cdr_grid(const CoherenceTrack& track, const PipelineConfig& config) {
  config.validate();
  const Geometry geo = config.geometry();
  const double cap = config.cap_linear();
  RealGrid grid(track.num_frames, track.num_bins);
  for (std::size_t b = 0; b < track.num_bins; ++b) {
    EstimatorInputs in;
    const double f = track.bin_hz(b);
    in.gamma_coh = desired_coherence(config.doa_rad, f, geo, config.field_model);
    in.gamma_diff = diffuse_coherence(f, geo, config.diffuse_model);
    for (std::size_t k = 0; k < track.num_frames; ++k) {
      in.gamma_x = track.gamma_at(k, b);
      grid.at(k, b) = estimate_cdr(config.estimator, in, cap).linear;
    }
  }
  return grid;
}

std::pair<Spectrogram, Spectrogram> apply_gain_stereo(const Spectrogram& left,
                                                      const Spectrogram& right,
                                                      const GainMask& mask) {
  if (!left.same_shape(right)) throw std::invalid_argument("spectrogram shapes differ");
  if (mask.num_frames != left.num_frames || mask.num_bins != left.num_bins)
    throw std::invalid_argument("mask shape does not match spectrograms");
  std::pair<Spectrogram, Spectrogram> out{left, right};
  for (std::size_t i = 0; i < mask.values.size(); ++i) {
    out.first.coeff[i] *= mask.values[i];
    out.second.coeff[i] *= mask.values[i];
  }
  return out;
}

}  // namespace bcdr::reference
