#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "bcdr/types.hpp"

namespace bcdr {

enum class WavEncoding { pcm16, float32 };

class WavError : public std::runtime_error {
 public:
  enum class Kind { not_found, channel_count, unsupported_encoding, malformed, io };

  WavError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Reads a stereo RIFF/WAVE file (PCM 16-bit or IEEE float 32-bit) into
// samples normalized to [-1, 1]. Non-stereo files and other encodings are
// rejected with distinct error kinds.
StereoSignal read_wav(const std::string& path);

// Writes the signal, clipping samples to [-1, 1]; returns how many samples
// were clipped. Files written with float32 read back bit-exactly (for
// in-range samples); pcm16 rounds to the nearest of 65536 levels.
std::size_t write_wav(const std::string& path, const StereoSignal& signal,
                      WavEncoding encoding = WavEncoding::float32);

}  // namespace bcdr
