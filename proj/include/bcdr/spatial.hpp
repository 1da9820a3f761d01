#pragma once

#include <complex>

#include "bcdr/types.hpp"

namespace bcdr {

// Frequency bounds of the low/high ITD regimes; the band in between is
// covered by linear interpolation. Fixed by the underlying measurements,
// not configurable.
constexpr double kItdLowHz = 500.0;
constexpr double kItdHighHz = 2000.0;

// Free-field time difference of arrival in seconds, d*sin(theta)/c.
// theta = 0 is broadside / the forward median plane.
double tdoa_free_field(double theta_rad, const Geometry& geo);

// Frequency-dependent interaural time difference in seconds.
// Below kItdLowHz the delay is 1.5*d*sin(theta)/c; above kItdHighHz it
// follows a piecewise expression in theta; in between the two regimes are
// linearly interpolated. Continuous in f and odd in theta.
double itd_binaural(double theta_rad, double freq_hz, const Geometry& geo);

// Unit-magnitude coherence of the desired (plane-wave) component,
// exp(j*2*pi*f*tau) with tau chosen by the field model.
std::complex<double> desired_coherence(double theta_rad, double freq_hz,
                                       const Geometry& geo, FieldModel model);

// Real-valued coherence of the diffuse component. All models evaluate to 1
// at f = 0 and stay within [-1, 1].
double diffuse_coherence(double freq_hz, const Geometry& geo, DiffuseModel model);

}  // namespace bcdr
