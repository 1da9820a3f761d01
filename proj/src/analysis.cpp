#include "bcdr/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "bcdr/cdr.hpp"
#include "bcdr/spatial.hpp"

namespace bcdr {

namespace {

constexpr double kDeltaCapDb = 40.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

}  // namespace

std::vector<double> default_theta_grid() {
  std::vector<double> grid;
  for (int deg = 0; deg <= 90; deg += 5) grid.push_back(deg_to_rad(deg));
  return grid;
}

std::vector<double> default_freq_grid() {
  std::vector<double> grid;
  for (int k = 0; k < 25; ++k) grid.push_back(125.0 * std::pow(2.0, k / 4.0));
  return grid;
}

ItdTable itd_table(std::span<const double> theta_grid, std::span<const double> freqs,
                   const Geometry& geo) {
  if (theta_grid.empty() || freqs.empty())
    throw std::invalid_argument("empty grid");
  ItdTable table;
  for (double theta : theta_grid) {
    for (double f : freqs) {
      table.theta_rad.push_back(theta);
      table.freq_hz.push_back(f);
      table.tdoa_s.push_back(tdoa_free_field(theta, geo));
      table.itd_s.push_back(itd_binaural(theta, f, geo));
    }
  }
  return table;
}

double robustness_delta_db(double eta_in_db, double theta_rad, double freq_hz,
                           const Geometry& geo, Estimator estimator,
                           FieldModel estimator_field) {
  const double eta_in = std::pow(10.0, eta_in_db / 10.0);
  const std::complex<double> gx =
      mix_coherence(eta_in, desired_coherence(theta_rad, freq_hz, geo, FieldModel::binaural),
                    diffuse_coherence(freq_hz, geo, DiffuseModel::binaural));

  EstimatorInputs in;
  in.gamma_x = gx;
  in.gamma_coh = desired_coherence(theta_rad, freq_hz, geo, estimator_field);
  in.gamma_diff = diffuse_coherence(
      freq_hz, geo,
      estimator_field == FieldModel::free_field ? DiffuseModel::sinc
                                                : DiffuseModel::binaural);
  const CdrValue est = estimate_cdr(estimator, in);
  const double delta = est.db - eta_in_db;
  return std::min(std::max(delta, -kDeltaCapDb), kDeltaCapDb);
}

ErrorSurface robustness_surface(double eta_in_db, std::span<const double> theta_grid,
                                std::span<const double> freq_grid, const Geometry& geo,
                                Estimator estimator, FieldModel estimator_field) {
  if (theta_grid.empty() || freq_grid.empty())
    throw std::invalid_argument("empty grid");
  for (double theta : theta_grid)
    if (!(theta >= 0.0 && theta <= kPi / 2.0 + 1e-9))
      throw std::invalid_argument("theta grid must lie in [0, pi/2]");
  for (double f : freq_grid)
    if (!(f > 0.0)) throw std::invalid_argument("frequencies must be > 0");

  ErrorSurface surface;
  surface.eta_in_db = eta_in_db;
  surface.theta_rad.assign(theta_grid.begin(), theta_grid.end());
  surface.freq_hz.assign(freq_grid.begin(), freq_grid.end());
  surface.delta_db.resize(theta_grid.size() * freq_grid.size());

  const std::size_t nf = freq_grid.size();
#pragma omp parallel for schedule(static)
  for (std::size_t ti = 0; ti < theta_grid.size(); ++ti)
    for (std::size_t fi = 0; fi < nf; ++fi)
      surface.delta_db[ti * nf + fi] = robustness_delta_db(
          eta_in_db, theta_grid[ti], freq_grid[fi], geo, estimator, estimator_field);
  return surface;
}

void export_csv(const ErrorSurface& surface, std::ostream& out) {
  if (surface.delta_db.empty()) throw std::invalid_argument("empty surface");
  out << "theta_deg,freq_hz,value\n";
  for (std::size_t ti = 0; ti < surface.theta_rad.size(); ++ti)
    for (std::size_t fi = 0; fi < surface.freq_hz.size(); ++fi)
      out << fmt(rad_to_deg(surface.theta_rad[ti])) << ',' << fmt(surface.freq_hz[fi])
          << ',' << fmt(surface.at(ti, fi)) << '\n';
}

void export_csv(const ErrorSurface& surface, const std::string& path) {
  auto out = open_or_throw(path);
  export_csv(surface, out);
}

void export_json(const ErrorSurface& surface, std::ostream& out) {
  if (surface.delta_db.empty()) throw std::invalid_argument("empty surface");
  nlohmann::json j;
  for (double t : surface.theta_rad) j["theta_deg"].push_back(rad_to_deg(t));
  j["freq_hz"] = surface.freq_hz;
  j["eta_in_db"] = surface.eta_in_db;
  for (std::size_t ti = 0; ti < surface.theta_rad.size(); ++ti) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t fi = 0; fi < surface.freq_hz.size(); ++fi)
      row.push_back(surface.at(ti, fi));
    j["values"].push_back(std::move(row));
  }
  out << j.dump(2) << '\n';
}

void export_json(const ErrorSurface& surface, const std::string& path) {
  auto out = open_or_throw(path);
  export_json(surface, out);
}

void export_csv(const ItdTable& table, std::ostream& out) {
  if (table.theta_rad.empty()) throw std::invalid_argument("empty table");
  out << "theta_deg,freq_hz,tdoa_s,itd_s\n";
  for (std::size_t i = 0; i < table.theta_rad.size(); ++i)
    out << fmt(rad_to_deg(table.theta_rad[i])) << ',' << fmt(table.freq_hz[i]) << ','
        << fmt(table.tdoa_s[i]) << ',' << fmt(table.itd_s[i]) << '\n';
}

void export_csv(const ItdTable& table, const std::string& path) {
  auto out = open_or_throw(path);
  export_csv(table, out);
}

void export_json(const ItdTable& table, std::ostream& out) {
  if (table.theta_rad.empty()) throw std::invalid_argument("empty table");
  nlohmann::json j;
  for (double t : table.theta_rad) j["theta_deg"].push_back(rad_to_deg(t));
  j["freq_hz"] = table.freq_hz;
  j["tdoa_s"] = table.tdoa_s;
  j["itd_s"] = table.itd_s;
  out << j.dump(2) << '\n';
}

void export_json(const ItdTable& table, const std::string& path) {
  auto out = open_or_throw(path);
  export_json(table, out);
}

void export_grid_csv(const RealGrid& grid, double bin_hz_step, std::ostream& out) {
  if (grid.values.empty()) throw std::invalid_argument("empty grid");
  out << "frame,freq_hz,value\n";
  for (std::size_t k = 0; k < grid.num_frames; ++k)
    for (std::size_t b = 0; b < grid.num_bins; ++b)
      out << k << ',' << fmt(bin_hz_step * static_cast<double>(b)) << ','
          << fmt(grid.at(k, b)) << '\n';
}

void export_grid_csv(const RealGrid& grid, double bin_hz_step, const std::string& path) {
  auto out = open_or_throw(path);
  export_grid_csv(grid, bin_hz_step, out);
}

}  // namespace bcdr
