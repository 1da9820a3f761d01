#include "bcdr/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>

#include "bcdr/analysis.hpp"
#include "bcdr/config_file.hpp"
#include "bcdr/dereverb.hpp"
#include "bcdr/synth.hpp"
#include "bcdr/wav.hpp"

namespace bcdr {

namespace {

struct PipelineFlags {
  std::string config_path;
  std::optional<double> doa_deg;
  std::optional<double> distance_m;
  std::optional<double> speed_of_sound;
  std::optional<std::string> estimator;
  std::optional<std::string> field;
  std::optional<std::string> diffuse;
  std::optional<int> frame;
  std::optional<int> hop;
  std::optional<double> lambda;
  std::optional<double> mu;
  std::optional<double> gmin;
  std::optional<double> cdr_cap_db;
  bool gain_smoothing = false;
  bool gain_smoothing_given = false;
};

void add_geometry_flags(CLI::App* sub, PipelineFlags& f) {
  sub->add_option("--config", f.config_path, "config file (key = value, keys as documented)");
  sub->add_option("--distance", f.distance_m, "microphone/ear distance in meters");
  sub->add_option("--speed-of-sound", f.speed_of_sound, "speed of sound in m/s");
}

void add_model_flags(CLI::App* sub, PipelineFlags& f) {
  add_geometry_flags(sub, f);
  sub->add_option("--doa", f.doa_deg, "direction of arrival in degrees, 0 = broadside");
  sub->add_option("--estimator", f.estimator,
                  "CDR estimator: schwarz1|schwarz2|thiergart2|schwarz3");
  sub->add_option("--field", f.field, "desired-signal model: free_field|binaural");
  sub->add_option("--diffuse", f.diffuse, "diffuse model: sinc|bessel_2d|binaural");
}

void add_stft_flags(CLI::App* sub, PipelineFlags& f) {
  sub->add_option("--frame", f.frame, "frame length in samples");
  sub->add_option("--hop", f.hop, "hop in samples (must divide frame length)");
}

void add_pipeline_flags(CLI::App* sub, PipelineFlags& f) {
  add_model_flags(sub, f);
  add_stft_flags(sub, f);
  sub->add_option("--lambda", f.lambda, "coherence forgetting factor in (0, 1)");
  sub->add_option("--mu", f.mu, "gain overestimation factor, >= 1");
  sub->add_option("--gmin", f.gmin, "gain floor in (0, 1)");
  sub->add_option("--cdr-cap", f.cdr_cap_db, "CDR cap in dB");
  sub->add_flag("--gain-smoothing",
                [&f](std::int64_t) {
                  f.gain_smoothing = true;
                  f.gain_smoothing_given = true;
                },
                "one-frame recursive gain smoothing");
}

struct ResolvedConfig {
  PipelineConfig config;
  bool doa_provided = false;
};

ResolvedConfig resolve(const PipelineFlags& f) {
  ResolvedConfig r;
  if (!f.config_path.empty()) {
    ParsedConfig parsed = load_config_file(f.config_path);
    r.config = parsed.config;
    r.doa_provided = parsed.keys_set.count("doa_rad") > 0;
  }
  PipelineConfig& c = r.config;
  if (f.doa_deg) {
    c.doa_rad = deg_to_rad(*f.doa_deg);
    r.doa_provided = true;
  }
  if (f.distance_m) c.mic_distance_m = *f.distance_m;
  if (f.speed_of_sound) c.speed_of_sound = *f.speed_of_sound;
  if (f.estimator) c.estimator = parse_estimator(*f.estimator);
  if (f.field) c.field_model = parse_field_model(*f.field);
  if (f.diffuse) c.diffuse_model = parse_diffuse_model(*f.diffuse);
  if (f.frame) c.frame_len = *f.frame;
  if (f.hop) c.hop = *f.hop;
  if (f.lambda) c.forgetting = *f.lambda;
  if (f.mu) c.mu = *f.mu;
  if (f.gmin) c.gmin = *f.gmin;
  if (f.cdr_cap_db) c.cdr_cap_db = *f.cdr_cap_db;
  if (f.gain_smoothing_given) c.gain_smoothing = f.gain_smoothing;
  c.validate();
  return r;
}

// Exit code 2 carrier for flag-level mistakes detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check_doa_usage(const ResolvedConfig& r) {
  if (estimator_needs_doa(r.config.estimator)) {
    if (!r.doa_provided)
      throw UsageError("--doa is required by estimator " + to_string(r.config.estimator));
  } else if (r.doa_provided) {
    std::cerr << "warning: --doa ignored; estimator " << to_string(r.config.estimator)
              << " is direction-independent\n";
  }
}

WavEncoding parse_encoding(const std::string& s) {
  if (s == "pcm16") return WavEncoding::pcm16;
  if (s == "float32") return WavEncoding::float32;
  throw UsageError("unknown encoding: " + s);
}

std::vector<double> parse_freq_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  if (out.empty()) throw UsageError("empty frequency list");
  return out;
}

template <typename T>
void write_table(const T& table, const std::string& path, const std::string& format) {
  if (format == "csv") {
    if (path.empty()) export_csv(table, std::cout);
    else export_csv(table, path);
  } else if (format == "json") {
    if (path.empty()) export_json(table, std::cout);
    else export_json(table, path);
  } else {
    throw UsageError("unknown format: " + format + " (expected csv or json)");
  }
}

struct DereverbArgs {
  std::string in, out, dump_cdr, dump_gain, encoding = "float32";
  PipelineFlags flags;
};

int cmd_dereverb(const DereverbArgs& a) {
  ResolvedConfig r = resolve(a.flags);
  check_doa_usage(r);
  const StereoSignal input = read_wav(a.in);
  const ProcessResult result = process_detailed(input, r.config);
  const std::size_t clipped = write_wav(a.out, result.output, parse_encoding(a.encoding));
  if (clipped > 0)
    std::cerr << "warning: " << clipped << " output samples clipped to [-1, 1]\n";
  const double bin_step = static_cast<double>(input.sample_rate) / r.config.frame_len;
  if (!a.dump_cdr.empty()) export_grid_csv(result.cdr, bin_step, a.dump_cdr);
  if (!a.dump_gain.empty()) export_grid_csv(result.mask, bin_step, a.dump_gain);
  return 0;
}

struct EstimateArgs {
  std::string in, out;
  PipelineFlags flags;
};

int cmd_estimate(const EstimateArgs& a) {
  ResolvedConfig r = resolve(a.flags);
  check_doa_usage(r);
  const StereoSignal input = read_wav(a.in);
  const Spectrogram left = analyze(input.left, r.config.frame_len, r.config.hop,
                                   input.sample_rate);
  const Spectrogram right = analyze(input.right, r.config.frame_len, r.config.hop,
                                    input.sample_rate);
  const CoherenceTrack track = estimate_coherence(left, right, r.config.forgetting);
  const RealGrid grid = cdr_grid(track, r.config);
  export_grid_csv(grid, static_cast<double>(input.sample_rate) / r.config.frame_len, a.out);
  return 0;
}

struct SynthArgs {
  std::string kind, out, in, encoding = "float32";
  double eta_in_db = 0.0;
  double duration_s = 5.0;
  int sample_rate = 16000;
  std::uint64_t seed = 1;
  bool per_bin = false;
  PipelineFlags flags;
};

int cmd_synth(const SynthArgs& a) {
  ResolvedConfig r = resolve(a.flags);
  FieldSpec spec;
  spec.theta_rad = r.config.doa_rad;
  spec.cdr_db = a.eta_in_db;
  spec.field_model = r.config.field_model;
  spec.diffuse_model = r.config.diffuse_model;
  spec.duration_s = a.duration_s;
  spec.sample_rate = a.sample_rate;
  spec.seed = a.seed;
  spec.frame_len = r.config.frame_len;
  spec.hop = r.config.hop;
  spec.per_bin_calibration = a.per_bin;

  std::vector<double> source;
  if (!a.in.empty()) {
    const StereoSignal s = read_wav(a.in);
    spec.sample_rate = s.sample_rate;
    source = s.left;  // source is single-channel; the left channel is used
  } else {
    source = white_noise(static_cast<std::size_t>(a.duration_s * a.sample_rate), a.seed);
  }

  StereoSignal out;
  if (a.kind == "plane_wave") {
    out = gen_plane_wave(source, spec.theta_rad, r.config.geometry(), spec.field_model,
                         spec.sample_rate, spec.frame_len, spec.hop);
  } else if (a.kind == "diffuse") {
    out = gen_diffuse(spec, r.config.geometry());
  } else if (a.kind == "mixture") {
    out = gen_mixture(source, spec, r.config.geometry()).mixture;
  } else {
    throw UsageError("unknown --kind: " + a.kind +
                     " (expected plane_wave, diffuse or mixture)");
  }

  // Normalize to 0.9 peak so the file survives the [-1, 1] range intact.
  double peak = 0.0;
  for (double v : out.left) peak = std::max(peak, std::abs(v));
  for (double v : out.right) peak = std::max(peak, std::abs(v));
  if (peak > 0.9) {
    const double scale = 0.9 / peak;
    for (double& v : out.left) v *= scale;
    for (double& v : out.right) v *= scale;
  }

  const std::size_t clipped = write_wav(a.out, out, parse_encoding(a.encoding));
  if (clipped > 0)
    std::cerr << "warning: " << clipped << " samples clipped to [-1, 1]\n";
  return 0;
}

struct GridArgs {
  std::string out, format = "csv";
  double eta_in_db = 20.0;
  std::string estimator = "schwarz2";
  std::string estimator_field = "free_field";
  double theta_min_deg = 0.0, theta_max_deg = 90.0, theta_step_deg = 5.0;
  std::string freqs;
  PipelineFlags flags;
};

std::vector<double> theta_grid_from(const GridArgs& a) {
  std::vector<double> grid;
  for (double t = a.theta_min_deg; t <= a.theta_max_deg + 1e-9; t += a.theta_step_deg)
    grid.push_back(deg_to_rad(t));
  if (grid.empty()) throw UsageError("empty theta grid");
  return grid;
}

int cmd_itd_table(const GridArgs& a) {
  ResolvedConfig r = resolve(a.flags);
  const std::vector<double> thetas = theta_grid_from(a);
  const std::vector<double> freqs =
      a.freqs.empty() ? std::vector<double>{200.0, 1250.0, 4000.0}
                      : parse_freq_list(a.freqs);
  const ItdTable table = itd_table(thetas, freqs, r.config.geometry());
  write_table(table, a.out, a.format);
  return 0;
}

int cmd_robustness(const GridArgs& a) {
  ResolvedConfig r = resolve(a.flags);
  const std::vector<double> thetas =
      a.theta_step_deg == 5.0 && a.theta_min_deg == 0.0 && a.theta_max_deg == 90.0
          ? default_theta_grid()
          : theta_grid_from(a);
  const std::vector<double> freqs =
      a.freqs.empty() ? default_freq_grid() : parse_freq_list(a.freqs);
  const ErrorSurface surface =
      robustness_surface(a.eta_in_db, thetas, freqs, r.config.geometry(),
                         parse_estimator(a.estimator), parse_field_model(a.estimator_field));
  write_table(surface, a.out, a.format);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Binaural CDR estimation and two-channel dereverberation"};
  app.require_subcommand(1);

  DereverbArgs dv;
  CLI::App* dereverb = app.add_subcommand(
      "dereverb", "Dereverberate a stereo WAV file with a CDR-driven postfilter");
  dereverb->add_option("--in", dv.in, "input stereo WAV file")->required();
  dereverb->add_option("--out", dv.out, "output WAV file")->required();
  dereverb->add_option("--encoding", dv.encoding, "output encoding: pcm16|float32");
  dereverb->add_option("--dump-cdr", dv.dump_cdr, "write per-bin linear CDR estimates as CSV");
  dereverb->add_option("--dump-gain", dv.dump_gain, "write per-bin gains as CSV");
  add_pipeline_flags(dereverb, dv.flags);

  EstimateArgs es;
  CLI::App* estimate = app.add_subcommand(
      "estimate", "Estimate the per-bin CDR of a stereo WAV file (CSV output)");
  estimate->add_option("--in", es.in, "input stereo WAV file")->required();
  estimate->add_option("--out", es.out, "output CSV path")->required();
  add_pipeline_flags(estimate, es.flags);

  SynthArgs sy;
  CLI::App* synth = app.add_subcommand(
      "synth", "Generate a synthetic binaural sound field as a WAV file");
  synth->add_option("--kind", sy.kind, "field kind: plane_wave|diffuse|mixture")->required();
  synth->add_option("--out", sy.out, "output WAV file")->required();
  synth->add_option("--in", sy.in, "optional source WAV (left channel used)");
  synth->add_option("--eta-in", sy.eta_in_db, "mixture coherent-to-diffuse ratio in dB");
  synth->add_option("--duration", sy.duration_s, "duration in seconds");
  synth->add_option("--rate", sy.sample_rate, "sample rate in Hz");
  synth->add_option("--seed", sy.seed, "random seed (fixed seed gives identical output)");
  synth->add_flag("--per-bin-calibration", sy.per_bin,
                  "calibrate the mixture ratio per frequency bin");
  synth->add_option("--encoding", sy.encoding, "output encoding: pcm16|float32");
  add_model_flags(synth, sy.flags);
  add_stft_flags(synth, sy.flags);

  GridArgs it;
  CLI::App* itd = app.add_subcommand(
      "itd-table", "Tabulate free-field TDOA and frequency-dependent ITD (CSV/JSON)");
  itd->add_option("--out", it.out, "output path (stdout when omitted)");
  itd->add_option("--format", it.format, "csv|json");
  itd->add_option("--theta-min", it.theta_min_deg, "first angle in degrees");
  itd->add_option("--theta-max", it.theta_max_deg, "last angle in degrees");
  itd->add_option("--theta-step", it.theta_step_deg, "angle step in degrees");
  itd->add_option("--freqs", it.freqs, "comma-separated frequencies in Hz");
  add_geometry_flags(itd, it.flags);
  it.theta_min_deg = -180.0;
  it.theta_max_deg = 180.0;

  GridArgs rb;
  CLI::App* robustness = app.add_subcommand(
      "robustness", "Estimation-error surface of an estimator fed binaural-model "
                    "coherence (CSV/JSON)");
  robustness->add_option("--out", rb.out, "output path (stdout when omitted)");
  robustness->add_option("--format", rb.format, "csv|json");
  robustness->add_option("--eta-in", rb.eta_in_db, "input CDR in dB");
  robustness->add_option("--estimator", rb.estimator,
                         "schwarz1|schwarz2|thiergart2|schwarz3");
  robustness->add_option("--estimator-field", rb.estimator_field,
                         "model family used by the estimator: free_field|binaural");
  robustness->add_option("--theta-min", rb.theta_min_deg, "first angle in degrees");
  robustness->add_option("--theta-max", rb.theta_max_deg, "last angle in degrees");
  robustness->add_option("--theta-step", rb.theta_step_deg, "angle step in degrees");
  robustness->add_option("--freqs", rb.freqs, "comma-separated frequencies in Hz");
  add_geometry_flags(robustness, rb.flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*dereverb) return cmd_dereverb(dv);
    if (*estimate) return cmd_estimate(es);
    if (*synth) return cmd_synth(sy);
    if (*itd) return cmd_itd_table(it);
    if (*robustness) return cmd_robustness(rb);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace bcdr
