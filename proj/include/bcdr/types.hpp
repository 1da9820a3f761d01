#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcdr {

enum class Estimator { schwarz1, schwarz2, thiergart2, schwarz3 };
enum class FieldModel { free_field, binaural };
enum class DiffuseModel { sinc, bessel_2d, binaural };
enum class Window { hann_periodic, rectangular };

// The directional estimators need a desired-signal coherence model and
// therefore a DOA; the blind ones work from the mixture coherence alone.
bool estimator_needs_doa(Estimator e);

std::string to_string(Estimator e);
std::string to_string(FieldModel m);
std::string to_string(DiffuseModel m);
Estimator parse_estimator(const std::string& s);
FieldModel parse_field_model(const std::string& s);
DiffuseModel parse_diffuse_model(const std::string& s);

// Microphone/ear spacing and propagation speed. Defaults match a typical
// dummy-head interaural distance.
struct Geometry {
  double distance_m = 0.17;
  double speed_of_sound = 343.0;
};

struct StereoSignal {
  std::vector<double> left;
  std::vector<double> right;
  int sample_rate = 16000;

  std::size_t size() const { return left.size(); }
  void validate() const;
};

// Dense K x B grid of real values (gains, CDR, ...), frame-major.
struct RealGrid {
  std::size_t num_frames = 0;
  std::size_t num_bins = 0;
  std::vector<double> values;

  RealGrid() = default;
  RealGrid(std::size_t frames, std::size_t bins, double fill = 0.0)
      : num_frames(frames), num_bins(bins), values(frames * bins, fill) {}

  double& at(std::size_t k, std::size_t b) { return values[k * num_bins + b]; }
  double at(std::size_t k, std::size_t b) const { return values[k * num_bins + b]; }
};

using GainMask = RealGrid;

struct PipelineConfig {
  double mic_distance_m = 0.17;
  double speed_of_sound = 343.0;
  double doa_rad = 0.0;
  Estimator estimator = Estimator::schwarz2;
  FieldModel field_model = FieldModel::binaural;
  DiffuseModel diffuse_model = DiffuseModel::binaural;
  int frame_len = 512;
  int hop = 128;
  double forgetting = 0.68;   // recursive-averaging factor, (0, 1)
  double mu = 1.3;            // gain overestimation factor, >= 1
  double gmin = 0.1;          // spectral gain floor, (0, 1)
  double cdr_cap_db = 40.0;
  bool gain_smoothing = false;

  Geometry geometry() const { return {mic_distance_m, speed_of_sound}; }
  double cap_linear() const;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace bcdr
