#pragma once

#include <set>
#include <string>

#include "bcdr/types.hpp"

namespace bcdr {

// Result of parsing a flat key=value config file. keys_set records which
// fields the file actually provided, so callers can tell an explicit
// doa_rad = 0 from an absent one.
struct ParsedConfig {
  PipelineConfig config;
  std::set<std::string> keys_set;
};

// Accepted keys mirror the PipelineConfig fields: mic_distance_m,
// speed_of_sound, doa_rad, estimator, field_model, diffuse_model,
// frame_len, hop, forgetting, mu, gmin, cdr_cap_db, gain_smoothing.
// '#' starts a comment; blank lines are ignored; unknown keys are errors.
ParsedConfig load_config_file(const std::string& path);

ParsedConfig parse_config_text(const std::string& text);

}  // namespace bcdr
