#include "bcdr/cdr.hpp"

#include <cmath>
#include <limits>

#include "bcdr/spatial.hpp"

namespace bcdr {

namespace {

constexpr double kDenGuard = 1e-12;
constexpr double kInfiniteCdr = 1e12;
constexpr double kBlindMagClamp = 1.0 - 1e-9;

CdrValue clamped(double raw, double cap_linear) {
  double lin;
  if (std::isnan(raw)) {
    lin = cap_linear;  // degenerate input, treat as fully coherent
  } else {
    lin = std::min(std::max(raw, 0.0), cap_linear);
  }
  return {lin, lin > 0.0 ? 10.0 * std::log10(lin)
                         : -std::numeric_limits<double>::infinity()};
}

double schwarz3_raw(std::complex<double> gx, double gd) {
  const double re = gx.real();
  const double m2 = std::norm(gx);
  const double denom = m2 - 1.0;
  if (std::abs(denom) < kDenGuard) return std::numeric_limits<double>::infinity();
  // Radicand is nonnegative for |gx| <= 1; clamp against rounding.
  const double radicand =
      gd * gd * re * re - gd * gd * m2 + gd * gd - 2.0 * gd * re + m2;
  const double root = std::sqrt(std::max(radicand, 0.0));
  return (gd * re - m2 - root) / denom;
}

double thiergart2_raw(std::complex<double> gx, double gd) {
  const std::complex<double> unit = std::polar(1.0, std::arg(gx));
  const std::complex<double> denom = gx - unit;
  if (std::abs(denom) < kDenGuard) return std::numeric_limits<double>::infinity();
  return ((gd - gx) / denom).real();
}

}  // namespace

std::complex<double> mix_coherence(double cdr, std::complex<double> gamma_coh,
                                   double gamma_diff) {
  if (cdr < 0.0) throw std::invalid_argument("cdr must be >= 0");
  if (cdr > kInfiniteCdr) return gamma_coh;
  return (cdr * gamma_coh + std::complex<double>{gamma_diff, 0.0}) / (cdr + 1.0);
}

CdrValue estimate_cdr_directional(Estimator method, const EstimatorInputs& in,
                                  double cap_linear) {
  const std::complex<double> num = std::conj(in.gamma_coh) * (in.gamma_diff - in.gamma_x);
  if (method == Estimator::schwarz1) {
    const double den = (std::conj(in.gamma_coh) * in.gamma_x).real() - 1.0;
    if (std::abs(den) < kDenGuard) return clamped(cap_linear, cap_linear);
    return clamped(num.real() / den, cap_linear);
  }
  if (method == Estimator::schwarz2) {
    const std::complex<double> den = std::conj(in.gamma_coh) * in.gamma_x - 1.0;
    if (std::abs(den) < kDenGuard) return clamped(cap_linear, cap_linear);
    return clamped(std::abs(num / den), cap_linear);
  }
  throw std::invalid_argument("not a direction-dependent estimator");
}

CdrValue estimate_cdr_blind(Estimator method, const EstimatorInputs& in,
                            double cap_linear) {
  std::complex<double> gx = in.gamma_x;
  const double mag = std::abs(gx);
  if (mag > kBlindMagClamp) gx *= kBlindMagClamp / mag;
  if (method == Estimator::thiergart2)
    return clamped(thiergart2_raw(gx, in.gamma_diff), cap_linear);
  if (method == Estimator::schwarz3)
    return clamped(schwarz3_raw(gx, in.gamma_diff), cap_linear);
  throw std::invalid_argument("not a direction-independent estimator");
}

CdrValue estimate_cdr(Estimator method, const EstimatorInputs& in, double cap_linear) {
  return estimator_needs_doa(method) ? estimate_cdr_directional(method, in, cap_linear)
                                     : estimate_cdr_blind(method, in, cap_linear);
}

RealGrid cdr_grid(const CoherenceTrack& track, const PipelineConfig& config) {
  config.validate();
  const Geometry geo = config.geometry();
  const double cap = config.cap_linear();
  const std::size_t B = track.num_bins;

  RealGrid grid(track.num_frames, B);
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < B; ++b) {
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

}  // namespace bcdr
