// Copyright 2026 The swapgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Imperfection models for the swapping experiment: isotropic (Werner) source
// noise, partially distinguishable photons at the Bell measurement, and
// random flips of Alice's and Claire's outcomes.

#pragma once

#include <array>
#include <optional>

#include "swapgame/config.hpp"
#include "swapgame/game.hpp"
#include "swapgame/quantum.hpp"

namespace swapgame {

/// p |Phi+><Phi+| + (1 - p) I/4.
QuantumState werner(double p);

/// Werner parameter whose Phi+ fidelity is f: p = (4f - 1) / 3.
double p_from_fidelity(double f);

/// Zeroes every off-diagonal element in the computational product basis.
Matrix dephase_computational(const Matrix& rho);

/// Bell-measurement outcome with visibility v: with weight v the ideal
/// conditional state, with weight 1 - v its computational-basis dephased
/// version. Outcome probabilities are those of the ideal projection.
ConditionalState noisy_conditional_state(const QuantumState& rho1,
                                         const QuantumState& rho2,
                                         BellOutcome b, double v);

struct NoiseParams {
  double p1 = 1.0;
  double p2 = 1.0;
  double v_bsm = 1.0;
  /// Probability that a recorded outcome matches the set basis; applied as
  /// a symmetric flip with probability 1 - f.
  double f_setting = 1.0;
  /// Optional per-setting overrides of f_setting.
  std::optional<std::array<double, kAliceSettings>> f_alice;
  std::optional<std::array<double, kClaireSettings>> f_claire;

  double alice_fidelity(int x) const;   // x in 1..6
  double claire_fidelity(int z) const;  // z in 1..3

  /// Throws InvalidInput when a parameter is outside its range.
  void validate() const;
};

/// Source fidelities 0.9852 and 0.9892, visibility 0.943, perfect settings.
NoiseParams reference_noise_params();

/// Reads the top-level keys of a noise config:
///   fidelity1 / fidelity2   (or p1 / p2 directly)
///   v_bsm
///   f_setting
///   f_alice = six values     (optional)
///   f_claire = three values  (optional)
/// Missing keys keep the ideal value. Throws ConfigError with a line number.
NoiseParams load_noise_params(const ConfigDocument& doc);

/// Full pipeline: Werner sources, noisy Bell measurement, outcome flips.
ProbabilityMatrix noisy_probability_matrix(const NoiseParams& np,
                                           const SettingsSpec& settings);

/// Applies independent symmetric flips to a and c of every row.
ProbabilityMatrix apply_setting_flips(const ProbabilityMatrix& pm,
                                      const NoiseParams& np);

GameScore predicted_score(const NoiseParams& np);

/// p1 p2 (4 + 8 v) / sqrt2, times (2f - 1)^2 under a uniform setting
/// fidelity f. Z-type correlators survive dephasing, X/Y-type ones scale by v.
double closed_form_score(double p1, double p2, double v, double f_setting = 1.0);

}  // namespace swapgame
