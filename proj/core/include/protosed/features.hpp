// core/include/protosed/features.hpp
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

#ifndef PROTOSED_FEATURES_HPP_
#define PROTOSED_FEATURES_HPP_

#include <Eigen/Dense>

#include "protosed/audio.hpp"

namespace protosed {

// Log-mel front-end parameters. Defaults are conventional for bioacoustics.
struct FeatureConfig {
  double sample_rate = 22050.0;  // Hz
  int fft_size = 1024;           // samples
  int hop = 256;                 // samples
  int mel_bins = 128;
  double fmin = 50.0;     // Hz
  double fmax = 11025.0;  // Hz
  double log_floor = 1e-10;
  int patch_frames = 17;  // fixed training patch length (~0.2 s at defaults)

  double frame_hop_s() const { return hop / sample_rate; }
  void validate() const;
};

// Log-mel time-frequency matrix: rows are mel bands, columns are frames.
// Used both for full-file spectrograms and for fixed-size patches.
struct MelPatch {
  Eigen::MatrixXd values;    // [mel_bins x frames]
  double frame_hop_s = 0.0;  // seconds between adjacent frames

  int bins() const { return static_cast<int>(values.rows()); }
  int frames() const { return static_cast<int>(values.cols()); }
};

// Triangular mel filterbank, [mel_bins x (fft_size/2 + 1)].
// HTK mel scale, unit-peak triangles between fmin and fmax.
Eigen::MatrixXd mel_filterbank(const FeatureConfig& cfg);

// Hann-windowed power-spectrogram -> mel -> log(mel_energy + log_floor).
// Frame count is floor((len - fft_size)/hop) + 1; input shorter than one
// FFT frame is a shape error. Deterministic: equal inputs give bit-equal
// outputs.
MelPatch mel_spectrogram(const Waveform& w, const FeatureConfig& cfg);

// Linear resize along the time axis to `target` frames. Identity when the
// frame count already matches.
Eigen::MatrixXd resize_time(const Eigen::MatrixXd& m, int target);

// Cuts [start_s, end_s) out of a full spectrogram and coerces it to exactly
// `target_frames` columns: shorter segments are tiled (cyclically repeated),
// longer ones linearly resized. Frame indexing is floor(t / frame_hop_s), so
// slices line up with the full matrix without recomputation drift.
MelPatch slice_patch(const MelPatch& spec, double start_s, double end_s,
                     int target_frames);

}  // namespace protosed

#endif  // PROTOSED_FEATURES_HPP_
