#include "bcdr/types.hpp"

#include <cmath>

namespace bcdr {

bool estimator_needs_doa(Estimator e) {
  return e == Estimator::schwarz1 || e == Estimator::schwarz2;
}

std::string to_string(Estimator e) {
  switch (e) {
    case Estimator::schwarz1: return "schwarz1";
    case Estimator::schwarz2: return "schwarz2";
    case Estimator::thiergart2: return "thiergart2";
    case Estimator::schwarz3: return "schwarz3";
  }
  return "?";
}

std::string to_string(FieldModel m) {
  return m == FieldModel::free_field ? "free_field" : "binaural";
}

std::string to_string(DiffuseModel m) {
  switch (m) {
    case DiffuseModel::sinc: return "sinc";
    case DiffuseModel::bessel_2d: return "bessel_2d";
    case DiffuseModel::binaural: return "binaural";
  }
  return "?";
}

Estimator parse_estimator(const std::string& s) {
  if (s == "schwarz1") return Estimator::schwarz1;
  if (s == "schwarz2") return Estimator::schwarz2;
  if (s == "thiergart2") return Estimator::thiergart2;
  if (s == "schwarz3") return Estimator::schwarz3;
  throw std::invalid_argument("unknown estimator: " + s);
}

FieldModel parse_field_model(const std::string& s) {
  if (s == "free_field") return FieldModel::free_field;
  if (s == "binaural") return FieldModel::binaural;
  throw std::invalid_argument("unknown field model: " + s);
}

DiffuseModel parse_diffuse_model(const std::string& s) {
  if (s == "sinc") return DiffuseModel::sinc;
  if (s == "bessel_2d") return DiffuseModel::bessel_2d;
  if (s == "binaural") return DiffuseModel::binaural;
  throw std::invalid_argument("unknown diffuse model: " + s);
}

void StereoSignal::validate() const {
  if (left.size() != right.size())
    throw std::invalid_argument("stereo channels differ in length");
  if (sample_rate <= 0) throw std::invalid_argument("sample_rate must be positive");
  for (double v : left)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite sample in left channel");
  for (double v : right)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite sample in right channel");
}

double PipelineConfig::cap_linear() const { return std::pow(10.0, cdr_cap_db / 10.0); }

void PipelineConfig::validate() const {
  if (mic_distance_m <= 0) throw std::invalid_argument("mic_distance_m must be > 0");
  if (speed_of_sound <= 0) throw std::invalid_argument("speed_of_sound must be > 0");
  if (doa_rad < -kPi || doa_rad > kPi)
    throw std::invalid_argument("doa_rad must lie in [-pi, pi]");
  if (frame_len <= 0) throw std::invalid_argument("frame_len must be > 0");
  if (hop <= 0 || hop > frame_len || frame_len % hop != 0)
    throw std::invalid_argument("hop must be a positive divisor of frame_len");
  if (forgetting <= 0 || forgetting >= 1)
    throw std::invalid_argument("forgetting must lie in (0, 1)");
  if (mu < 1) throw std::invalid_argument("mu must be >= 1");
  if (gmin <= 0 || gmin >= 1) throw std::invalid_argument("gmin must lie in (0, 1)");
  if (!std::isfinite(cdr_cap_db)) throw std::invalid_argument("cdr_cap_db must be finite");
}

}  // namespace bcdr
