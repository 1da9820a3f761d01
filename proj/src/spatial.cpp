#include "bcdr/spatial.hpp"

#include <cmath>

namespace bcdr {

namespace {

constexpr double kThetaTol = 1e-9;

void check_theta(double theta) {
  if (!(theta >= -kPi - kThetaTol && theta <= kPi + kThetaTol))
    throw std::invalid_argument("theta must lie in [-pi, pi]");
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

// High-frequency ITD, valid for f >= kItdHighHz. Branches meet at
// theta = +-pi/2.
double itd_high(double theta, const Geometry& geo) {
  const double s = std::sin(theta);
  double bracket;
  if (theta > kPi / 2.0) {
    bracket = s + (kPi - theta);
  } else if (theta < -kPi / 2.0) {
    bracket = s - (kPi + theta);
  } else {
    bracket = s + theta;
  }
  return 0.5 * geo.distance_m * bracket / geo.speed_of_sound;
}

double itd_low(double theta, const Geometry& geo) {
  return 1.5 * geo.distance_m * std::sin(theta) / geo.speed_of_sound;
}

}  // namespace

double tdoa_free_field(double theta_rad, const Geometry& geo) {
  check_theta(theta_rad);
  return geo.distance_m * std::sin(theta_rad) / geo.speed_of_sound;
}

double itd_binaural(double theta_rad, double freq_hz, const Geometry& geo) {
  check_theta(theta_rad);
  if (freq_hz < 0) throw std::invalid_argument("frequency must be >= 0");
  if (freq_hz <= kItdLowHz) return itd_low(theta_rad, geo);
  if (freq_hz >= kItdHighHz) return itd_high(theta_rad, geo);
  const double lo = itd_low(theta_rad, geo);
  const double hi = itd_high(theta_rad, geo);
  return lo + (hi - lo) / (kItdHighHz - kItdLowHz) * (freq_hz - kItdLowHz);
}

std::complex<double> desired_coherence(double theta_rad, double freq_hz,
                                       const Geometry& geo, FieldModel model) {
  const double tau = model == FieldModel::free_field
                         ? tdoa_free_field(theta_rad, geo)
                         : itd_binaural(theta_rad, freq_hz, geo);
  return std::polar(1.0, 2.0 * kPi * freq_hz * tau);
}

double diffuse_coherence(double freq_hz, const Geometry& geo, DiffuseModel model) {
  if (freq_hz < 0) throw std::invalid_argument("frequency must be >= 0");
  const double x = 2.0 * kPi * freq_hz * geo.distance_m / geo.speed_of_sound;
  switch (model) {
    case DiffuseModel::sinc:
      return sinc(x);
    case DiffuseModel::bessel_2d:
      return std::cyl_bessel_j(0.0, x);
    case DiffuseModel::binaural: {
      // Lindevald-Benade binaural correlation, alpha = 2.2, beta = 0.5.
      constexpr double kAlpha = 2.2;
      constexpr double kBeta = 0.5;
      const double bx = kBeta * x;
      return sinc(kAlpha * x) / std::sqrt(1.0 + bx * bx * bx * bx);
    }
  }
  throw std::invalid_argument("unknown diffuse model");
}

}  // namespace bcdr
