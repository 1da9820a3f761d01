#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bcdr/types.hpp"

namespace bcdr {

// Estimation error surface delta = est_db - eta_in_db over a theta x
// frequency grid, theta-major, capped to +-40 dB so cells where the
// estimate floors or caps stay finite.
struct ErrorSurface {
  std::vector<double> theta_rad;
  std::vector<double> freq_hz;
  std::vector<double> delta_db;  // theta_rad.size() * freq_hz.size()
  double eta_in_db = 0.0;

  double at(std::size_t ti, std::size_t fi) const {
    return delta_db[ti * freq_hz.size() + fi];
  }
};

// Free-field TDOA next to the frequency-dependent ITD on a grid, long
// format: one row per (theta, f).
struct ItdTable {
  std::vector<double> theta_rad;
  std::vector<double> freq_hz;
  std::vector<double> tdoa_s;
  std::vector<double> itd_s;
};

std::vector<double> default_theta_grid();  // 0..90 deg, 5 deg steps, radians
std::vector<double> default_freq_grid();   // 125..8000 Hz, 25 log-spaced points

ItdTable itd_table(std::span<const double> theta_grid, std::span<const double> freqs,
                   const Geometry& geo);

// Single cell of the robustness analysis: the mixture coherence is formed
// from the binaural models at (theta, f) for the given input CDR and fed
// to the chosen estimator, whose own models follow estimator_field.
double robustness_delta_db(double eta_in_db, double theta_rad, double freq_hz,
                           const Geometry& geo, Estimator estimator,
                           FieldModel estimator_field);

// Grid version of the above. Thetas must lie in [0, pi/2].
ErrorSurface robustness_surface(double eta_in_db, std::span<const double> theta_grid,
                                std::span<const double> freq_grid, const Geometry& geo,
                                Estimator estimator, FieldModel estimator_field);

// CSV: long format, header "theta_deg,freq_hz,value".
// JSON: object {"theta_deg": [...], "freq_hz": [...], "values": [[...]]},
// values theta-major. Empty grids are rejected.
void export_csv(const ErrorSurface& surface, std::ostream& out);
void export_csv(const ErrorSurface& surface, const std::string& path);
void export_json(const ErrorSurface& surface, std::ostream& out);
void export_json(const ErrorSurface& surface, const std::string& path);

// CSV header "theta_deg,freq_hz,tdoa_s,itd_s"; JSON carries both value
// grids under "tdoa_s" and "itd_s".
void export_csv(const ItdTable& table, std::ostream& out);
void export_csv(const ItdTable& table, const std::string& path);
void export_json(const ItdTable& table, std::ostream& out);
void export_json(const ItdTable& table, const std::string& path);

// Long-format CSV of a time-frequency grid, header
// "frame,freq_hz,value"; used for CDR and gain dumps.
void export_grid_csv(const RealGrid& grid, double bin_hz_step, std::ostream& out);
void export_grid_csv(const RealGrid& grid, double bin_hz_step, const std::string& path);

}  // namespace bcdr
