#include "bcdr/wav.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

namespace bcdr {

namespace {

// All multi-byte fields in RIFF are little-endian; this code assumes a
// little-endian host.
template <typename T>
T read_le(std::ifstream& f) {
  T v{};
  f.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

template <typename T>
void write_le(std::ofstream& f, T v) {
  f.write(reinterpret_cast<const char*>(&v), sizeof v);
}

struct FmtChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
};

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;

}  // namespace

StereoSignal read_wav(const std::string& path) {
  if (!std::filesystem::exists(path))
    throw WavError(WavError::Kind::not_found, "no such file: " + path);
  std::ifstream f(path, std::ios::binary);
  if (!f) throw WavError(WavError::Kind::io, "cannot open: " + path);

  char tag[4];
  f.read(tag, 4);
  std::uint32_t riff_size = read_le<std::uint32_t>(f);
  (void)riff_size;
  char wave[4];
  f.read(wave, 4);
  if (!f || std::memcmp(tag, "RIFF", 4) != 0 || std::memcmp(wave, "WAVE", 4) != 0)
    throw WavError(WavError::Kind::malformed, "not a RIFF/WAVE file: " + path);

  FmtChunk fmt;
  bool have_fmt = false;
  std::vector<char> data;

  // Scan chunks; tolerate extra ones (LIST, fact, ...).
  while (f) {
    char id[4];
    f.read(id, 4);
    if (!f) break;
    const std::uint32_t size = read_le<std::uint32_t>(f);
    if (!f) throw WavError(WavError::Kind::malformed, "truncated chunk header");
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (size < 16) throw WavError(WavError::Kind::malformed, "fmt chunk too small");
      fmt.format = read_le<std::uint16_t>(f);
      fmt.channels = read_le<std::uint16_t>(f);
      fmt.sample_rate = read_le<std::uint32_t>(f);
      read_le<std::uint32_t>(f);  // byte rate
      read_le<std::uint16_t>(f);  // block align
      fmt.bits_per_sample = read_le<std::uint16_t>(f);
      f.seekg(size - 16 + (size & 1), std::ios::cur);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data.resize(size);
      f.read(data.data(), size);
      if (f.gcount() != static_cast<std::streamsize>(size))
        throw WavError(WavError::Kind::malformed, "truncated data chunk");
      if (size & 1) f.seekg(1, std::ios::cur);
    } else {
      f.seekg(size + (size & 1), std::ios::cur);
    }
  }
  if (!have_fmt) throw WavError(WavError::Kind::malformed, "missing fmt chunk");

  if (fmt.channels != 2)
    throw WavError(WavError::Kind::channel_count,
                   "expected 2 channels, file has " + std::to_string(fmt.channels));

  const bool pcm16 = fmt.format == kFormatPcm && fmt.bits_per_sample == 16;
  const bool float32 = fmt.format == kFormatFloat && fmt.bits_per_sample == 32;
  if (!pcm16 && !float32)
    throw WavError(WavError::Kind::unsupported_encoding,
                   "unsupported encoding (format " + std::to_string(fmt.format) + ", " +
                       std::to_string(fmt.bits_per_sample) + " bit); expected PCM16 or float32");

  const std::size_t bytes_per_frame = fmt.channels * fmt.bits_per_sample / 8;
  const std::size_t frames = data.size() / bytes_per_frame;

  StereoSignal signal;
  signal.sample_rate = static_cast<int>(fmt.sample_rate);
  signal.left.resize(frames);
  signal.right.resize(frames);
  if (pcm16) {
    const std::int16_t* p = reinterpret_cast<const std::int16_t*>(data.data());
    for (std::size_t i = 0; i < frames; ++i) {
      signal.left[i] = p[2 * i] / 32768.0;
      signal.right[i] = p[2 * i + 1] / 32768.0;
    }
  } else {
    const float* p = reinterpret_cast<const float*>(data.data());
    for (std::size_t i = 0; i < frames; ++i) {
      signal.left[i] = p[2 * i];
      signal.right[i] = p[2 * i + 1];
    }
  }
  return signal;
}

std::size_t write_wav(const std::string& path, const StereoSignal& signal,
                      WavEncoding encoding) {
  signal.validate();
  std::ofstream f(path, std::ios::binary);
  if (!f) throw WavError(WavError::Kind::io, "cannot open for writing: " + path);

  const std::size_t frames = signal.size();
  const std::uint16_t bits = encoding == WavEncoding::pcm16 ? 16 : 32;
  const std::uint32_t data_size = static_cast<std::uint32_t>(frames * 2 * bits / 8);

  f.write("RIFF", 4);
  write_le<std::uint32_t>(f, 36 + data_size);
  f.write("WAVE", 4);
  f.write("fmt ", 4);
  write_le<std::uint32_t>(f, 16);
  write_le<std::uint16_t>(f, encoding == WavEncoding::pcm16 ? kFormatPcm : kFormatFloat);
  write_le<std::uint16_t>(f, 2);
  write_le<std::uint32_t>(f, static_cast<std::uint32_t>(signal.sample_rate));
  write_le<std::uint32_t>(f, static_cast<std::uint32_t>(signal.sample_rate) * 2 * bits / 8);
  write_le<std::uint16_t>(f, static_cast<std::uint16_t>(2 * bits / 8));
  write_le<std::uint16_t>(f, bits);
  f.write("data", 4);
  write_le<std::uint32_t>(f, data_size);

  std::size_t clipped = 0;
  auto clip = [&clipped](double v) {
    if (v > 1.0) {
      ++clipped;
      return 1.0;
    }
    if (v < -1.0) {
      ++clipped;
      return -1.0;
    }
    return v;
  };

  for (std::size_t i = 0; i < frames; ++i) {
    const double l = clip(signal.left[i]);
    const double r = clip(signal.right[i]);
    if (encoding == WavEncoding::pcm16) {
      const auto q = [](double v) {
        const long s = std::lround(v * 32768.0);
        return static_cast<std::int16_t>(std::min(32767l, std::max(-32768l, s)));
      };
      write_le<std::int16_t>(f, q(l));
      write_le<std::int16_t>(f, q(r));
    } else {
      write_le<float>(f, static_cast<float>(l));
      write_le<float>(f, static_cast<float>(r));
    }
  }
  if (!f) throw WavError(WavError::Kind::io, "write failed: " + path);
  return clipped;
}

}  // namespace bcdr
