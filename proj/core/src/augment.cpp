// core/src/augment.cpp
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

#include "protosed/augment.hpp"

#include <algorithm>
#include <cmath>

#include "protosed/error.hpp"

namespace protosed {

MelPatch spectrogram_mixing(const MelPatch& a, const MelPatch& b, double mix) {
  if (a.values.rows() != b.values.rows() ||
      a.values.cols() != b.values.cols())
    throw UsageError("spectrogram_mixing: shape mismatch");
  if (mix < 0.0 || mix > 1.0)
    throw UsageError("spectrogram_mixing: mix must be in [0,1]");
  MelPatch out;
  out.frame_hop_s = a.frame_hop_s;
  out.values = mix * a.values + (1.0 - mix) * b.values;
  return out;
}

MelPatch frequency_shift(const MelPatch& p, int bands) {
  const int n = p.bins();
  if (bands < 0 || bands > n)
    throw UsageError("frequency_shift: bands must be in [0, mel_bins]");
  if (bands == 0) return p;
  MelPatch out;
  out.frame_hop_s = p.frame_hop_s;
  const double fill = p.values.minCoeff();
  out.values.setConstant(n, p.frames(), fill);
  for (int r = 0; r + bands < n; ++r) out.values.row(r + bands) = p.values.row(r);
  return out;
}

MelPatch random_resized_time_crop(const MelPatch& p, double ratio, Rng& rng) {
  if (ratio <= 0.0 || ratio > 1.0)
    throw UsageError("random_resized_time_crop: ratio must be in (0,1]");
  const int frames = p.frames();
  int len = static_cast<int>(std::ceil(ratio * frames));
  len = std::clamp(len, 1, frames);
  int offset = 0;
  if (len < frames) {
    std::uniform_int_distribution<int> dist(0, frames - len);
    offset = dist(rng);
  }
  MelPatch out;
  out.frame_hop_s = p.frame_hop_s;
  out.values = resize_time(p.values.middleCols(offset, len), frames);
  return out;
}

MelPatch power_gain(const MelPatch& p, double factor) {
  if (factor <= 0.0 || factor > 1.0)
    throw UsageError("power_gain: factor must be in (0,1]");
  MelPatch out;
  out.frame_hop_s = p.frame_hop_s;
  out.values = factor * p.values;
  return out;
}

MelPatch awgn(const MelPatch& p, double stddev, Rng& rng) {
  if (stddev < 0.0) throw UsageError("awgn: stddev must be >= 0");
  if (stddev == 0.0) return p;
  std::normal_distribution<double> dist(0.0, stddev);
  MelPatch out;
  out.frame_hop_s = p.frame_hop_s;
  out.values = p.values;
  for (int c = 0; c < out.values.cols(); ++c)
    for (int r = 0; r < out.values.rows(); ++r) out.values(r, c) += dist(rng);
  return out;
}

namespace {

double sample_beta(double alpha, double beta, Rng& rng) {
  std::gamma_distribution<double> ga(alpha, 1.0), gb(beta, 1.0);
  const double x = ga(rng), y = gb(rng);
  return x + y > 0 ? x / (x + y) : 0.5;
}

}  // namespace

AugPolicy AugPolicy::pretrain_defaults() {
  return AugConfig{}.train_policy();
}

AugPolicy AugPolicy::light() { return AugConfig{}.light_policy(); }

AugPolicy AugPolicy::identity() { return AugPolicy{}; }

MelPatch apply_policy(const MelPatch& p, const AugPolicy& policy, Rng& rng,
                      const MelPatch* mix_partner) {
  MelPatch out = p;
  for (const AugStep& step : policy.steps) {
    switch (step.kind) {
      case AugStep::Kind::kSpectrogramMixing: {
        if (!mix_partner) break;  // no partner outside pre-training batches
        out = spectrogram_mixing(out, *mix_partner,
                                 sample_beta(step.lo, step.hi, rng));
        break;
      }
      case AugStep::Kind::kFrequencyShift: {
        std::uniform_int_distribution<int> dist(static_cast<int>(step.lo),
                                                static_cast<int>(step.hi));
        out = frequency_shift(out, std::min(dist(rng), out.bins()));
        break;
      }
      case AugStep::Kind::kTimeCrop: {
        std::uniform_real_distribution<double> dist(step.lo, step.hi);
        out = random_resized_time_crop(out, dist(rng), rng);
        break;
      }
      case AugStep::Kind::kPowerGain: {
        std::uniform_real_distribution<double> dist(step.lo, step.hi);
        out = power_gain(out, dist(rng));
        break;
      }
      case AugStep::Kind::kAwgn: {
        std::uniform_real_distribution<double> dist(step.lo, step.hi);
        out = awgn(out, dist(rng), rng);
        break;
      }
    }
  }
  return out;
}

void AugConfig::validate() const {
  if (sm_alpha <= 0 || sm_beta <= 0)
    throw UsageError("augment: beta shape parameters must be > 0");
  if (fs_max_bands < 0) throw UsageError("augment: fs bands must be >= 0");
  auto range_ok = [](double lo, double hi) { return lo > 0 && lo <= hi && hi <= 1.0; };
  if (!range_ok(rrtc_lo, rrtc_hi) || !range_ok(light_rrtc_lo, light_rrtc_hi))
    throw UsageError("augment: rrtc ratio range must satisfy 0 < lo <= hi <= 1");
  if (!range_ok(pg_lo, pg_hi) || !range_ok(light_pg_lo, light_pg_hi))
    throw UsageError("augment: pg factor range must satisfy 0 < lo <= hi <= 1");
  if (awgn_max_std < 0) throw UsageError("augment: awgn std must be >= 0");
}

AugPolicy AugConfig::train_policy() const {
  validate();
  AugPolicy policy;
  if (sm)
    policy.steps.push_back({AugStep::Kind::kSpectrogramMixing, sm_alpha, sm_beta});
  policy.steps.push_back(
      {AugStep::Kind::kFrequencyShift, 0.0, static_cast<double>(fs_max_bands)});
  policy.steps.push_back({AugStep::Kind::kTimeCrop, rrtc_lo, rrtc_hi});
  policy.steps.push_back({AugStep::Kind::kPowerGain, pg_lo, pg_hi});
  policy.steps.push_back({AugStep::Kind::kAwgn, 0.0, awgn_max_std});
  return policy;
}

AugPolicy AugConfig::light_policy() const {
  validate();
  AugPolicy policy;
  policy.steps.push_back({AugStep::Kind::kTimeCrop, light_rrtc_lo, light_rrtc_hi});
  policy.steps.push_back({AugStep::Kind::kPowerGain, light_pg_lo, light_pg_hi});
  return policy;
}

}  // namespace protosed
