#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "bcdr/cli.hpp"
#include "bcdr/synth.hpp"
#include "bcdr/wav.hpp"

using namespace bcdr;

namespace {

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "bcdr");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::filesystem::path work_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "bcdr_cli_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string make_input_wav(const std::string& name, double seconds = 1.0) {
  const auto path = (work_dir() / name).string();
  StereoSignal s;
  s.sample_rate = 16000;
  const std::size_t n = static_cast<std::size_t>(seconds * 16000);
  s.left = white_noise(n, 200);
  s.right = white_noise(n, 201);
  for (auto& v : s.left) v *= 0.1;
  for (auto& v : s.right) v *= 0.1;
  write_wav(path, s);
  return path;
}

}  // namespace

TEST_CASE("dereverb writes an output of the same length") {
  const std::string in = make_input_wav("in.wav");
  const std::string out = (work_dir() / "out.wav").string();
  CHECK(run({"dereverb", "--in", in, "--out", out, "--doa", "45", "--estimator",
             "schwarz2", "--field", "binaural"}) == 0);
  const StereoSignal result = read_wav(out);
  CHECK(result.size() == 16000);
  CHECK(result.sample_rate == 16000);
}

TEST_CASE("direction-dependent estimators demand a DOA") {
  const std::string in = make_input_wav("in2.wav");
  const std::string out = (work_dir() / "out2.wav").string();
  CHECK(run({"dereverb", "--in", in, "--out", out, "--estimator", "schwarz2"}) == 2);
  CHECK(run({"dereverb", "--in", in, "--out", out, "--estimator", "schwarz1"}) == 2);
  // blind estimators run without one (and merely warn if given)
  CHECK(run({"dereverb", "--in", in, "--out", out, "--estimator", "schwarz3"}) == 0);
  CHECK(run({"dereverb", "--in", in, "--out", out, "--estimator", "thiergart2",
             "--doa", "30"}) == 0);
}

TEST_CASE("a config file can provide the DOA and flags override it") {
  const std::string in = make_input_wav("in3.wav");
  const std::string out = (work_dir() / "out3.wav").string();
  const std::string cfg = (work_dir() / "pipeline.cfg").string();
  std::ofstream(cfg) << "doa_rad = 0.7853981633974483\nestimator = schwarz2\ngmin = 0.2\n";
  CHECK(run({"dereverb", "--in", in, "--out", out, "--config", cfg}) == 0);
  CHECK(run({"dereverb", "--in", in, "--out", out, "--config", cfg, "--estimator",
             "schwarz3"}) == 0);
}

TEST_CASE("bad flags exit with 2, missing files with 1") {
  CHECK(run({"dereverb", "--in", "x.wav"}) == 2);              // missing --out
  CHECK(run({"dereverb", "--bogus"}) == 2);                    // unknown flag
  CHECK(run({}) == 2);                                         // no subcommand
  CHECK(run({"synth", "--kind", "blorp", "--out",
             (work_dir() / "nope.wav").string()}) == 2);       // bad enum value
  const std::string out = (work_dir() / "nope2.wav").string();
  CHECK(run({"dereverb", "--in", "/nonexistent/in.wav", "--out", out, "--doa", "0"}) == 1);
}

TEST_CASE("synth produces deterministic files of the requested length") {
  const std::string out1 = (work_dir() / "synth1.wav").string();
  const std::string out2 = (work_dir() / "synth2.wav").string();
  CHECK(run({"synth", "--kind", "diffuse", "--duration", "0.5", "--seed", "5", "--out",
             out1}) == 0);
  CHECK(run({"synth", "--kind", "diffuse", "--duration", "0.5", "--seed", "5", "--out",
             out2}) == 0);
  const StereoSignal a = read_wav(out1);
  const StereoSignal b = read_wav(out2);
  CHECK(a.size() == 8000);
  CHECK(a.left == b.left);
  CHECK(a.right == b.right);

  const std::string mix = (work_dir() / "mix.wav").string();
  CHECK(run({"synth", "--kind", "mixture", "--doa", "45", "--eta-in", "0", "--duration",
             "0.5", "--out", mix}) == 0);
  CHECK(read_wav(mix).size() == 8000);
}

TEST_CASE("estimate and dump options emit CSV grids") {
  const std::string in = make_input_wav("in4.wav", 0.5);
  const std::string csv = (work_dir() / "cdr.csv").string();
  CHECK(run({"estimate", "--in", in, "--out", csv, "--estimator", "schwarz3"}) == 0);
  std::ifstream f(csv);
  std::string header;
  std::getline(f, header);
  CHECK(header == "frame,freq_hz,value");

  const std::string out = (work_dir() / "dump_out.wav").string();
  const std::string gain_csv = (work_dir() / "gain.csv").string();
  CHECK(run({"dereverb", "--in", in, "--out", out, "--doa", "0", "--dump-gain",
             gain_csv}) == 0);
  CHECK(std::filesystem::file_size(gain_csv) > 100);
}

TEST_CASE("itd-table and robustness write grid files") {
  const std::string csv = (work_dir() / "itd.csv").string();
  CHECK(run({"itd-table", "--out", csv, "--freqs", "200,4000"}) == 0);
  std::ifstream f(csv);
  std::string header;
  std::getline(f, header);
  CHECK(header == "theta_deg,freq_hz,tdoa_s,itd_s");

  const std::string json = (work_dir() / "rob.json").string();
  CHECK(run({"robustness", "--eta-in", "20", "--estimator-field", "free_field",
             "--format", "json", "--out", json}) == 0);
  CHECK(std::filesystem::file_size(json) > 100);

  CHECK(run({"robustness", "--format", "yaml", "--out", json}) == 2);
}

TEST_CASE("help exits cleanly") {
  CHECK(run({"--help"}) == 0);
}
