// core/src/audio.cpp
//
// Copyright 2026 The protosed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "protosed/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "protosed/error.hpp"

namespace protosed {

namespace {

uint32_t read_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) |
         (static_cast<uint32_t>(b[3]) << 24);
}

uint16_t read_u16(std::istream& is) {
  unsigned char b[2];
  is.read(reinterpret_cast<char*>(b), 2);
  return static_cast<uint16_t>(b[0] | (b[1] << 8));
}

void write_u32(std::ostream& os, uint32_t v) {
  char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
               static_cast<char>((v >> 16) & 0xff),
               static_cast<char>((v >> 24) & 0xff)};
  os.write(b, 4);
}

void write_u16(std::ostream& os, uint16_t v) {
  char b[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
  os.write(b, 2);
}

double decode_sample(const unsigned char* p, uint16_t format, uint16_t bits) {
  if (format == 1) {  // integer PCM
    switch (bits) {
      case 16: {
        int16_t v;
        std::memcpy(&v, p, 2);
        return v / 32768.0;
      }
      case 24: {
        int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
        if (v & 0x800000) v |= ~0xffffff;  // sign-extend
        return v / 8388608.0;
      }
      case 32: {
        int32_t v;
        std::memcpy(&v, p, 4);
        return v / 2147483648.0;
      }
      default:
        break;
    }
  } else if (format == 3) {  // IEEE float
    if (bits == 32) {
      float v;
      std::memcpy(&v, p, 4);
      return v;
    }
    if (bits == 64) {
      double v;
      std::memcpy(&v, p, 8);
      return v;
    }
  }
  throw DataError("unsupported WAV sample format (format=" +
                  std::to_string(format) + ", bits=" + std::to_string(bits) +
                  ")");
}

}  // namespace

Waveform read_wav(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open audio file: " + path);

  char tag[4];
  is.read(tag, 4);
  if (!is || std::memcmp(tag, "RIFF", 4) != 0)
    throw DataError("not a RIFF/WAV file: " + path);
  read_u32(is);  // RIFF size
  is.read(tag, 4);
  if (!is || std::memcmp(tag, "WAVE", 4) != 0)
    throw DataError("not a RIFF/WAV file: " + path);

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t sample_rate = 0;
  std::vector<unsigned char> data;
  bool have_fmt = false, have_data = false;

  while (is.read(tag, 4)) {
    uint32_t size = read_u32(is);
    if (!is) break;
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      format = read_u16(is);
      channels = read_u16(is);
      sample_rate = read_u32(is);
      read_u32(is);  // byte rate
      read_u16(is);  // block align
      bits = read_u16(is);
      if (size > 16) is.seekg(size - 16, std::ios::cur);
      if (format == 0xfffe) format = 1;  // extensible: assume PCM payload
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      data.resize(size);
      is.read(reinterpret_cast<char*>(data.data()), size);
      have_data = true;
    } else {
      is.seekg(size + (size & 1), std::ios::cur);
    }
  }

  if (!have_fmt || !have_data)
    throw DataError("malformed WAV (missing fmt/data chunk): " + path);
  if (channels == 0 || sample_rate == 0 || bits == 0 || bits % 8 != 0)
    throw DataError("malformed WAV header: " + path);

  const size_t bytes_per_sample = bits / 8;
  const size_t frame_bytes = bytes_per_sample * channels;
  const size_t frames = data.size() / frame_bytes;
  if (frames == 0) throw DataError("empty audio file: " + path);

  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.resize(frames);
  for (size_t f = 0; f < frames; ++f) {
    double acc = 0.0;
    const unsigned char* p = data.data() + f * frame_bytes;
    for (unsigned ch = 0; ch < channels; ++ch)
      acc += decode_sample(p + ch * bytes_per_sample, format, bits);
    w.samples[f] = acc / channels;
  }
  return w;
}

void write_wav_pcm16(const std::string& path, const Waveform& w) {
  if (w.samples.empty()) throw UsageError("refusing to write empty waveform");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot write audio file: " + path);

  const uint32_t n = static_cast<uint32_t>(w.samples.size());
  const uint32_t rate = static_cast<uint32_t>(std::lround(w.sample_rate));
  const uint32_t data_bytes = n * 2;

  os.write("RIFF", 4);
  write_u32(os, 36 + data_bytes);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  write_u32(os, 16);
  write_u16(os, 1);   // PCM
  write_u16(os, 1);   // mono
  write_u32(os, rate);
  write_u32(os, rate * 2);
  write_u16(os, 2);
  write_u16(os, 16);
  os.write("data", 4);
  write_u32(os, data_bytes);
  for (double s : w.samples) {
    double clipped = std::clamp(s, -1.0, 1.0);
    int16_t v = static_cast<int16_t>(std::lround(clipped * 32767.0));
    write_u16(os, static_cast<uint16_t>(v));
  }
  if (!os) throw DataError("short write: " + path);
}

Waveform resample_linear(const Waveform& w, double target_rate) {
  if (target_rate <= 0) throw UsageError("target sample rate must be > 0");
  if (w.samples.empty()) throw DataError("cannot resample empty waveform");
  if (w.sample_rate == target_rate) return w;

  const double ratio = w.sample_rate / target_rate;
  const size_t out_len = static_cast<size_t>(std::llround(
      static_cast<double>(w.samples.size()) * target_rate / w.sample_rate));

  Waveform out;
  out.sample_rate = target_rate;
  out.samples.resize(std::max<size_t>(out_len, 1));
  const size_t last = w.samples.size() - 1;
  for (size_t i = 0; i < out.samples.size(); ++i) {
    double x = i * ratio;
    size_t i0 = std::min(static_cast<size_t>(x), last);
    size_t i1 = std::min(i0 + 1, last);
    double frac = x - static_cast<double>(i0);
    out.samples[i] = (1.0 - frac) * w.samples[i0] + frac * w.samples[i1];
  }
  return out;
}

Waveform load_audio(const std::string& path, double target_rate) {
  Waveform w = read_wav(path);
  if (w.samples.empty()) throw DataError("empty audio file: " + path);
  return resample_linear(w, target_rate);
}

}  // namespace protosed
