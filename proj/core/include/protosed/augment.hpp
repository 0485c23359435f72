// core/include/protosed/augment.hpp
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

#ifndef PROTOSED_AUGMENT_HPP_
#define PROTOSED_AUGMENT_HPP_

#include <random>
#include <vector>

#include "protosed/features.hpp"

namespace protosed {

using Rng = std::mt19937_64;

// ---- individual transforms (pure; rng passed by the caller) ----

// out = mix*a + (1-mix)*b, elementwise. Shapes must match.
MelPatch spectrogram_mixing(const MelPatch& a, const MelPatch& b, double mix);

// Rows shifted to higher mel indices by `bands`; vacated low rows are filled
// with the patch minimum (silence in the log domain).
MelPatch frequency_shift(const MelPatch& p, int bands);

// Contiguous crop of ceil(ratio*frames) frames at a uniform random offset,
// linearly resized back to the original frame count.
MelPatch random_resized_time_crop(const MelPatch& p, double ratio, Rng& rng);

// out = factor * p, applied in the log-mel domain.
MelPatch power_gain(const MelPatch& p, double factor);

// Additive white Gaussian noise with the given standard deviation.
MelPatch awgn(const MelPatch& p, double stddev, Rng& rng);

// ---- stochastic policies ----

// One policy step; `lo`/`hi` parametrize the step's sampling range:
//   kSpectrogramMixing : mix ~ Beta(lo, hi)
//   kFrequencyShift    : bands ~ uniform integer in [lo, hi]
//   kTimeCrop          : ratio ~ uniform in [lo, hi]
//   kPowerGain         : factor ~ uniform in [lo, hi]
//   kAwgn              : stddev ~ uniform in [lo, hi]
struct AugStep {
  enum class Kind {
    kSpectrogramMixing,
    kFrequencyShift,
    kTimeCrop,
    kPowerGain,
    kAwgn
  };
  Kind kind;
  double lo = 0.0;
  double hi = 0.0;
};

struct AugPolicy {
  std::vector<AugStep> steps;

  // SM Beta(5,2), FS [0,10], RRTC [0.6,1.0], PG [0.75,1.0], AWGN [0,0.1],
  // applied in that order.
  static AugPolicy pretrain_defaults();
  // RRTC [0.9,1.0] + PG [0.9,1.0]; used for fine-tuning and multi-view
  // inference.
  static AugPolicy light();
  // No-op policy.
  static AugPolicy identity();
};

// Applies the policy steps in order, sampling fresh parameters from `rng`.
// Spectrogram mixing needs a partner patch; steps of that kind are skipped
// when `mix_partner` is null (mixing only happens during pre-training, where
// the batch sampler supplies a partner). The mixed patch keeps the anchor's
// label; labels are tracked by the caller.
MelPatch apply_policy(const MelPatch& p, const AugPolicy& policy, Rng& rng,
                      const MelPatch* mix_partner = nullptr);

// Policy parameter block as it appears in the run config ([augment] section).
struct AugConfig {
  bool sm = true;         // spectrogram mixing on/off (pre-training only)
  double sm_alpha = 5.0;  // Beta shape parameters
  double sm_beta = 2.0;
  int fs_max_bands = 10;
  double rrtc_lo = 0.6, rrtc_hi = 1.0;
  double pg_lo = 0.75, pg_hi = 1.0;
  double awgn_max_std = 0.1;
  double light_rrtc_lo = 0.9, light_rrtc_hi = 1.0;
  double light_pg_lo = 0.9, light_pg_hi = 1.0;

  AugPolicy train_policy() const;
  AugPolicy light_policy() const;
  void validate() const;
};

}  // namespace protosed

#endif  // PROTOSED_AUGMENT_HPP_
