#include "bcdr/config_file.hpp"

#include <fstream>
#include <sstream>

namespace bcdr {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size())
    throw std::invalid_argument("config: bad numeric value for " + key + ": " + v);
  return d;
}

int to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  const int i = static_cast<int>(d);
  if (d != i) throw std::invalid_argument("config: " + key + " must be an integer");
  return i;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("config: bad boolean for " + key + ": " + v);
}

}  // namespace

ParsedConfig parse_config_text(const std::string& text) {
  ParsedConfig parsed;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    PipelineConfig& c = parsed.config;
    if (key == "mic_distance_m") c.mic_distance_m = to_double(key, value);
    else if (key == "speed_of_sound") c.speed_of_sound = to_double(key, value);
    else if (key == "doa_rad") c.doa_rad = to_double(key, value);
    else if (key == "estimator") c.estimator = parse_estimator(value);
    else if (key == "field_model") c.field_model = parse_field_model(value);
    else if (key == "diffuse_model") c.diffuse_model = parse_diffuse_model(value);
    else if (key == "frame_len") c.frame_len = to_int(key, value);
    else if (key == "hop") c.hop = to_int(key, value);
    else if (key == "forgetting") c.forgetting = to_double(key, value);
    else if (key == "mu") c.mu = to_double(key, value);
    else if (key == "gmin") c.gmin = to_double(key, value);
    else if (key == "cdr_cap_db") c.cdr_cap_db = to_double(key, value);
    else if (key == "gain_smoothing") c.gain_smoothing = to_bool(key, value);
    else
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": unknown key: " + key);
    parsed.keys_set.insert(key);
  }
  return parsed;
}

ParsedConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace bcdr
