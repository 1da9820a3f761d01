#include "bcdr/synth.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include "bcdr/spatial.hpp"
#include "bcdr/stft.hpp"

namespace bcdr {

namespace {

std::size_t sample_count(const FieldSpec& spec) {
  if (spec.duration_s <= 0) throw std::invalid_argument("duration must be > 0");
  if (spec.sample_rate <= 0) throw std::invalid_argument("sample_rate must be > 0");
  return static_cast<std::size_t>(std::llround(spec.duration_s * spec.sample_rate));
}

double broadband_power(const StereoSignal& s) {
  double p = 0.0;
  for (double v : s.left) p += v * v;
  for (double v : s.right) p += v * v;
  return p;
}

}  // namespace

std::vector<double> white_noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> out(n);
  const double two_pi = 2.0 * kPi;
  for (std::size_t i = 0; i < n; i += 2) {
    // Box-Muller; avoids the implementation-defined std::normal_distribution.
    double u1 = 0.0;
    while (u1 <= 0.0)
      u1 = std::generate_canonical<double, std::numeric_limits<double>::digits>(rng);
    const double u2 =
        std::generate_canonical<double, std::numeric_limits<double>::digits>(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    out[i] = r * std::cos(two_pi * u2);
    if (i + 1 < n) out[i + 1] = r * std::sin(two_pi * u2);
  }
  return out;
}

StereoSignal gen_plane_wave(std::span<const double> source, double theta_rad,
                            const Geometry& geo, FieldModel model, int sample_rate,
                            int frame_len, int hop) {
  for (double v : source)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite source sample");
  if (!(theta_rad >= -kPi - 1e-9 && theta_rad <= kPi + 1e-9))
    throw std::invalid_argument("theta must lie in [-pi, pi]");

  Spectrogram spec = analyze(source, frame_len, hop, sample_rate);
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < spec.num_bins; ++b) {
    const double f = spec.bin_hz(b);
    const double tau = model == FieldModel::free_field
                           ? tdoa_free_field(theta_rad, geo)
                           : itd_binaural(theta_rad, f, geo);
    const std::complex<double> rot = std::polar(1.0, -2.0 * kPi * f * tau);
    for (std::size_t k = 0; k < spec.num_frames; ++k) spec.at(k, b) *= rot;
  }

  StereoSignal out;
  out.sample_rate = sample_rate;
  out.left.assign(source.begin(), source.end());
  out.right = synthesize(spec);
  out.right.resize(source.size());
  return out;
}

namespace {

// Right channel from per-bin mixing weights: R = w * A + sqrt(1 - |w|^2) * B,
// B orthogonal to A with equal per-bin power, so the per-bin sample
// coherence equals w and the channel powers match.
Spectrogram mix_against(const Spectrogram& a, const Spectrogram& ortho,
                        std::span<const std::complex<double>> weights) {
  Spectrogram r = ortho;
#pragma omp parallel for schedule(static)
  for (std::size_t bin = 0; bin < a.num_bins; ++bin) {
    const std::complex<double> w = weights[bin];
    const double s = std::sqrt(std::max(1.0 - std::norm(w), 0.0));
    for (std::size_t k = 0; k < a.num_frames; ++k)
      r.at(k, bin) = w * a.at(k, bin) + s * ortho.at(k, bin);
  }
  return r;
}

std::vector<std::complex<double>> measured_coherence(const std::vector<double>& left,
                                                     const std::vector<double>& right,
                                                     const FieldSpec& spec) {
  // Note: coherence of left against right is conjugated relative to the
  // mixing weight of the right channel (cross spectrum is L * conj(R)).
  const Spectrogram l = analyze(left, spec.frame_len, spec.hop, spec.sample_rate);
  const Spectrogram r = analyze(right, spec.frame_len, spec.hop, spec.sample_rate);
  std::vector<std::complex<double>> gamma(l.num_bins, {0.0, 0.0});
  for (std::size_t b = 0; b < l.num_bins; ++b) {
    std::complex<double> cross{0.0, 0.0};
    double pl = 0.0, pr = 0.0;
    for (std::size_t k = 0; k < l.num_frames; ++k) {
      cross += l.at(k, b) * std::conj(r.at(k, b));
      pl += std::norm(l.at(k, b));
      pr += std::norm(r.at(k, b));
    }
    if (pl * pr > 0.0) gamma[b] = cross / std::sqrt(pl * pr);
  }
  return gamma;
}

}  // namespace

StereoSignal gen_diffuse_with_target(const FieldSpec& spec, const Geometry& geo,
                                     std::span<const double> gamma_target) {
  (void)geo;
  const std::size_t n = sample_count(spec);
  if (n < static_cast<std::size_t>(spec.frame_len))
    throw std::invalid_argument("duration shorter than one frame");

  const std::vector<double> n1 = white_noise(n, spec.seed);
  const std::vector<double> n2 = white_noise(n, spec.seed ^ 0x9e3779b97f4a7c15ull);
  const Spectrogram a = analyze(n1, spec.frame_len, spec.hop, spec.sample_rate);
  Spectrogram ortho = analyze(n2, spec.frame_len, spec.hop, spec.sample_rate);
  if (gamma_target.size() != a.num_bins)
    throw std::invalid_argument("coherence target must have frame_len/2 + 1 entries");
  for (double g : gamma_target)
    if (!(g >= -1.0 && g <= 1.0))
      throw std::invalid_argument("coherence target outside [-1, 1]");

  const std::size_t B = a.num_bins;
  const std::size_t K = a.num_frames;

  // Orthogonalize the second noise spectrum against the first across
  // frames and equalize powers, so the generated pair realizes the target
  // coherence in its sample statistics, not just in expectation.
#pragma omp parallel for schedule(static)
  for (std::size_t bin = 0; bin < B; ++bin) {
    double pa = 0.0;
    std::complex<double> cross{0.0, 0.0};
    for (std::size_t k = 0; k < K; ++k) {
      pa += std::norm(a.at(k, bin));
      cross += std::conj(a.at(k, bin)) * ortho.at(k, bin);
    }
    if (pa > 0.0) {
      const std::complex<double> proj = cross / pa;
      for (std::size_t k = 0; k < K; ++k) ortho.at(k, bin) -= proj * a.at(k, bin);
    }
    double pb = 0.0;
    for (std::size_t k = 0; k < K; ++k) pb += std::norm(ortho.at(k, bin));
    const double scale = pb > 0.0 ? std::sqrt(pa / pb) : 0.0;
    for (std::size_t k = 0; k < K; ++k) ortho.at(k, bin) *= scale;
  }

  StereoSignal out;
  out.sample_rate = spec.sample_rate;
  out.left = synthesize(a);
  out.left.resize(n);

  std::vector<std::complex<double>> weights(B);
  for (std::size_t bin = 0; bin < B; ++bin) weights[bin] = gamma_target[bin];
  out.right = synthesize(mix_against(a, ortho, weights));
  out.right.resize(n);

  // Resynthesis couples neighboring bins and frames, which perturbs the
  // realized coherence of this particular noise draw. The perturbation is
  // deterministic given the draw, so drive it out by fixed-point
  // iteration on the complex mixing weights; degenerate bins
  // (|target| = 1, exact channel identity) are left alone. The measured
  // coherence is conj(w).
  for (int pass = 0; pass < 4; ++pass) {
    const auto measured = measured_coherence(out.left, out.right, spec);
    bool any = false;
    double worst = 0.0;
    for (std::size_t bin = 0; bin < B; ++bin) {
      if (std::abs(gamma_target[bin]) >= 1.0) continue;
      const std::complex<double> err = std::conj(measured[bin]) - gamma_target[bin];
      worst = std::max(worst, std::abs(err));
      std::complex<double> w = weights[bin] - err;
      const double mag = std::abs(w);
      if (mag > 1.0) w /= mag;
      any |= w != weights[bin];
      weights[bin] = w;
    }
    if (!any || worst < 1e-3) break;
    out.right = synthesize(mix_against(a, ortho, weights));
    out.right.resize(n);
  }
  return out;
}

StereoSignal gen_diffuse(const FieldSpec& spec, const Geometry& geo) {
  const std::size_t bins = static_cast<std::size_t>(spec.frame_len / 2 + 1);
  std::vector<double> target(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    const double f = static_cast<double>(b) * spec.sample_rate / spec.frame_len;
    target[b] = diffuse_coherence(f, geo, spec.diffuse_model);
  }
  return gen_diffuse_with_target(spec, geo, target);
}

MixtureParts gen_mixture(std::span<const double> source, const FieldSpec& spec,
                         const Geometry& geo) {
  if (!std::isfinite(spec.cdr_db)) throw std::invalid_argument("cdr_db must be finite");
  double source_power = 0.0;
  for (double v : source) source_power += v * v;
  if (source_power <= 0.0) throw std::invalid_argument("source has zero power");

  MixtureParts parts;
  parts.coherent = gen_plane_wave(source, spec.theta_rad, geo, spec.field_model,
                                  spec.sample_rate, spec.frame_len, spec.hop);

  FieldSpec diffuse_spec = spec;
  diffuse_spec.duration_s =
      static_cast<double>(source.size()) / spec.sample_rate;
  parts.diffuse = gen_diffuse(diffuse_spec, geo);
  parts.diffuse.left.resize(source.size());
  parts.diffuse.right.resize(source.size());

  const double target_ratio = std::pow(10.0, spec.cdr_db / 10.0);
  if (spec.per_bin_calibration) {
    Spectrogram cl = analyze(parts.coherent.left, spec.frame_len, spec.hop, spec.sample_rate);
    Spectrogram cr = analyze(parts.coherent.right, spec.frame_len, spec.hop, spec.sample_rate);
    Spectrogram dl = analyze(parts.diffuse.left, spec.frame_len, spec.hop, spec.sample_rate);
    Spectrogram dr = analyze(parts.diffuse.right, spec.frame_len, spec.hop, spec.sample_rate);
    for (std::size_t b = 0; b < dl.num_bins; ++b) {
      double pc = 0.0, pd = 0.0;
      for (std::size_t k = 0; k < dl.num_frames; ++k) {
        pc += std::norm(cl.at(k, b)) + std::norm(cr.at(k, b));
        pd += std::norm(dl.at(k, b)) + std::norm(dr.at(k, b));
      }
      const double g = pd > 0.0 ? std::sqrt(pc / (pd * target_ratio)) : 0.0;
      for (std::size_t k = 0; k < dl.num_frames; ++k) {
        dl.at(k, b) *= g;
        dr.at(k, b) *= g;
      }
    }
    parts.diffuse.left = synthesize(dl);
    parts.diffuse.right = synthesize(dr);
    parts.diffuse.left.resize(source.size());
    parts.diffuse.right.resize(source.size());
  } else {
    const double pc = broadband_power(parts.coherent);
    const double pd = broadband_power(parts.diffuse);
    const double g = std::sqrt(pc / (pd * target_ratio));
    for (double& v : parts.diffuse.left) v *= g;
    for (double& v : parts.diffuse.right) v *= g;
  }

  parts.mixture.sample_rate = spec.sample_rate;
  parts.mixture.left.resize(source.size());
  parts.mixture.right.resize(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) {
    parts.mixture.left[i] = parts.coherent.left[i] + parts.diffuse.left[i];
    parts.mixture.right[i] = parts.coherent.right[i] + parts.diffuse.right[i];
  }
  return parts;
}

}  // namespace bcdr
