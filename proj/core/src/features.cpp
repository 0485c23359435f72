// core/src/features.cpp
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

#include "protosed/features.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <vector>

#include "protosed/error.hpp"

namespace protosed {

namespace {

// FFTW plan creation is not thread-safe; execution on distinct buffers is.
std::mutex fftw_plan_mutex;

double hz_to_mel(double f) { return 2595.0 * std::log10(1.0 + f / 700.0); }
double mel_to_hz(double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); }

}  // namespace

void FeatureConfig::validate() const {
  if (sample_rate <= 0) throw UsageError("sample_rate must be > 0");
  if (fft_size <= 0 || hop <= 0) throw UsageError("fft_size/hop must be > 0");
  if (hop > fft_size) throw UsageError("hop must be <= fft_size");
  if (mel_bins < 1) throw UsageError("mel_bins must be >= 1");
  if (!(fmin < fmax)) throw UsageError("fmin must be < fmax");
  if (fmax > sample_rate / 2.0 + 1e-9)
    throw UsageError("fmax must be <= sample_rate/2");
  if (log_floor <= 0) throw UsageError("log_floor must be > 0");
  if (patch_frames < 1) throw UsageError("patch_frames must be >= 1");
}

Eigen::MatrixXd mel_filterbank(const FeatureConfig& cfg) {
  cfg.validate();
  const int n_bins = cfg.fft_size / 2 + 1;
  const double mel_lo = hz_to_mel(cfg.fmin);
  const double mel_hi = hz_to_mel(cfg.fmax);

  // mel_bins + 2 edge points, equally spaced on the mel scale
  std::vector<double> edges_hz(cfg.mel_bins + 2);
  for (int i = 0; i < cfg.mel_bins + 2; ++i) {
    double m = mel_lo + (mel_hi - mel_lo) * i / (cfg.mel_bins + 1);
    edges_hz[i] = mel_to_hz(m);
  }

  Eigen::MatrixXd fb = Eigen::MatrixXd::Zero(cfg.mel_bins, n_bins);
  for (int b = 0; b < cfg.mel_bins; ++b) {
    const double lo = edges_hz[b], center = edges_hz[b + 1], hi = edges_hz[b + 2];
    for (int k = 0; k < n_bins; ++k) {
      const double f = k * cfg.sample_rate / cfg.fft_size;
      if (f <= lo || f >= hi) continue;
      fb(b, k) = f <= center ? (f - lo) / (center - lo) : (hi - f) / (hi - center);
    }
  }
  return fb;
}

MelPatch mel_spectrogram(const Waveform& w, const FeatureConfig& cfg) {
  cfg.validate();
  const int n = static_cast<int>(w.samples.size());
  if (n < cfg.fft_size)
    throw UsageError("waveform shorter than one FFT frame (" +
                     std::to_string(n) + " < " + std::to_string(cfg.fft_size) +
                     " samples)");

  const int frames = (n - cfg.fft_size) / cfg.hop + 1;
  const int n_bins = cfg.fft_size / 2 + 1;

  // periodic Hann window
  Eigen::VectorXd window(cfg.fft_size);
  for (int i = 0; i < cfg.fft_size; ++i)
    window(i) = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / cfg.fft_size);

  std::vector<double> in(cfg.fft_size);
  std::vector<fftw_complex> out(n_bins);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    plan = fftw_plan_dft_r2c_1d(cfg.fft_size, in.data(), out.data(),
                                FFTW_ESTIMATE);
  }

  const Eigen::MatrixXd fb = mel_filterbank(cfg);
  Eigen::VectorXd power(n_bins);
  MelPatch patch;
  patch.values.resize(cfg.mel_bins, frames);
  patch.frame_hop_s = cfg.frame_hop_s();

  for (int t = 0; t < frames; ++t) {
    const double* src = w.samples.data() + static_cast<size_t>(t) * cfg.hop;
    for (int i = 0; i < cfg.fft_size; ++i) in[i] = src[i] * window(i);
    fftw_execute(plan);
    for (int k = 0; k < n_bins; ++k)
      power(k) = out[k][0] * out[k][0] + out[k][1] * out[k][1];
    patch.values.col(t) =
        ((fb * power).array() + cfg.log_floor).log().matrix();
  }

  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    fftw_destroy_plan(plan);
  }

  if (!patch.values.allFinite())
    throw NumericError("non-finite values in mel spectrogram");
  return patch;
}

Eigen::MatrixXd resize_time(const Eigen::MatrixXd& m, int target) {
  const int src = static_cast<int>(m.cols());
  if (target < 1) throw UsageError("resize target must be >= 1");
  if (src == target) return m;
  Eigen::MatrixXd out(m.rows(), target);
  if (src == 1) {
    for (int j = 0; j < target; ++j) out.col(j) = m.col(0);
    return out;
  }
  for (int j = 0; j < target; ++j) {
    const double x =
        target == 1 ? 0.0 : static_cast<double>(j) * (src - 1) / (target - 1);
    const int i0 = std::min(static_cast<int>(x), src - 1);
    const int i1 = std::min(i0 + 1, src - 1);
    const double frac = x - i0;
    out.col(j) = (1.0 - frac) * m.col(i0) + frac * m.col(i1);
  }
  return out;
}

MelPatch slice_patch(const MelPatch& spec, double start_s, double end_s,
                     int target_frames) {
  if (target_frames < 1) throw UsageError("target_frames must be >= 1");
  if (spec.frame_hop_s <= 0) throw UsageError("spectrogram has no frame hop");
  if (start_s < 0 || end_s <= start_s)
    throw UsageError("invalid interval [" + std::to_string(start_s) + ", " +
                     std::to_string(end_s) + ")");

  const int total = spec.frames();
  int first = static_cast<int>(std::floor(start_s / spec.frame_hop_s));
  if (first >= total)
    throw UsageError("interval starts beyond the end of the spectrogram");
  int last = static_cast<int>(std::ceil(end_s / spec.frame_hop_s));
  last = std::min(last, total);
  last = std::max(last, first + 1);

  const int len = last - first;
  Eigen::MatrixXd seg = spec.values.middleCols(first, len);

  MelPatch out;
  out.frame_hop_s = spec.frame_hop_s;
  if (len == target_frames) {
    out.values = seg;
  } else if (len < target_frames) {
    // tile: cyclic repeat, then truncate
    out.values.resize(seg.rows(), target_frames);
    for (int j = 0; j < target_frames; ++j) out.values.col(j) = seg.col(j % len);
  } else {
    out.values = resize_time(seg, target_frames);
  }
  return out;
}

}  // namespace protosed
