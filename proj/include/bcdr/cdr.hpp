#pragma once

#include <complex>

#include "bcdr/coherence.hpp"
#include "bcdr/types.hpp"

namespace bcdr {

// A coherent-to-diffuse power ratio, floored at 0 and capped. db is
// 10*log10(linear), -inf at 0.
struct CdrValue {
  double linear = 0.0;
  double db = 0.0;
};

// Per-bin inputs of the estimators: the observed mixture coherence, the
// desired-signal model coherence (unit magnitude; directional estimators
// only), and the real diffuse model coherence.
struct EstimatorInputs {
  std::complex<double> gamma_x{0.0, 0.0};
  std::complex<double> gamma_coh{1.0, 0.0};
  double gamma_diff = 0.0;
};

constexpr double kDefaultCapLinear = 1e4;  // +40 dB

// Coherence of a mixture of a plane-wave component at the given CDR and a
// diffuse component: (cdr * gamma_coh + gamma_diff) / (cdr + 1). Serves as
// the forward model the estimators invert. cdr beyond 1e12 returns
// gamma_coh.
std::complex<double> mix_coherence(double cdr, std::complex<double> gamma_coh,
                                   double gamma_diff);

// Direction-dependent estimators (schwarz1, schwarz2). Both invert
// mix_coherence exactly under matched models:
//   schwarz1 = Re{Gc* (Gd - Gx)} / (Re{Gc* Gx} - 1)
//   schwarz2 = |Gc* (Gd - Gx) / (Gc* Gx - 1)| = |(Gd - Gx) / (Gx - Gc)|
// Near-singular denominators (fully coherent observation) map to the cap.
CdrValue estimate_cdr_directional(Estimator method, const EstimatorInputs& in,
                                  double cap_linear = kDefaultCapLinear);

// Direction-independent estimators (thiergart2, schwarz3); gamma_coh is
// ignored. |gamma_x| is clamped below 1 before evaluation to keep the
// phase-projection term of thiergart2 regular.
CdrValue estimate_cdr_blind(Estimator method, const EstimatorInputs& in,
                            double cap_linear = kDefaultCapLinear);

// Dispatch across all four methods.
CdrValue estimate_cdr(Estimator method, const EstimatorInputs& in,
                      double cap_linear = kDefaultCapLinear);

// Applies the configured estimator to every frame/bin of the track, with
// the model coherences evaluated once per bin. Result holds linear values
// in [0, cap].
RealGrid cdr_grid(const CoherenceTrack& track, const PipelineConfig& config);

}  // namespace bcdr
