// core/include/protosed/audio.hpp
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

#ifndef PROTOSED_AUDIO_HPP_
#define PROTOSED_AUDIO_HPP_

#include <string>
#include <vector>

namespace protosed {

// Mono waveform. Amplitudes are dimensionless, nominally in [-1, 1].
struct Waveform {
  std::vector<double> samples;
  double sample_rate = 0.0;  // Hz

  double duration_s() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

// Reads a PCM WAV file (16/24/32-bit integer or 32/64-bit float).
// Multi-channel input is averaged down to mono.
Waveform read_wav(const std::string& path);

// Writes a mono waveform as 16-bit PCM. Samples are clipped to [-1, 1].
void write_wav_pcm16(const std::string& path, const Waveform& w);

// Linear-interpolation resampler. Identity when rates already match.
Waveform resample_linear(const Waveform& w, double target_rate);

// read_wav + resample_linear. Throws DataError on unreadable or empty input.
Waveform load_audio(const std::string& path, double target_rate);

}  // namespace protosed

#endif  // PROTOSED_AUDIO_HPP_
