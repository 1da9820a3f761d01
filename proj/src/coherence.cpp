#include "bcdr/coherence.hpp"

#include <cmath>

namespace bcdr {

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

  const std::size_t B = track.num_bins;
  const double one_minus = 1.0 - lambda;

  // The recursion runs over frames; bins are independent.
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < B; ++b) {
    double pll = 0.0, prr = 0.0;
    std::complex<double> plr{0.0, 0.0};
    for (std::size_t k = 0; k < track.num_frames; ++k) {
      const std::complex<double> xl = left.at(k, b);
      const std::complex<double> xr = right.at(k, b);
      const double ill = std::norm(xl);
      const double irr = std::norm(xr);
      const std::complex<double> ilr = xl * std::conj(xr);
      if (k == 0) {
        pll = ill;
        prr = irr;
        plr = ilr;
      } else {
        pll = lambda * pll + one_minus * ill;
        prr = lambda * prr + one_minus * irr;
        plr = lambda * plr + one_minus * ilr;
      }
      const std::size_t idx = k * B + b;
      track.phi_ll[idx] = pll;
      track.phi_rr[idx] = prr;
      track.phi_lr[idx] = plr;

      const double power = pll * prr;
      std::complex<double> g{0.0, 0.0};
      if (power >= 1e-20) {
        g = plr / std::sqrt(power);
        const double mag = std::abs(g);
        if (mag > 1.0) g /= mag;
      }
      track.gamma[idx] = g;
    }
  }
  return track;
}

}  // namespace bcdr
