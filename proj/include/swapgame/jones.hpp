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

// Jones-calculus model of the polarization analysers: fixed waveplates and
// electro-optic phase modulators in front of a polarizing beam splitter that
// measures Z. A chain U realizes the observable U^dagger Z U.
//
// Conventions (searched by verify_setting, since none is fixed a priori):
//   retarder at angle t with retardance G:
//       J = R(-t) diag(1, exp(s_r i G)) R(t),  R(t) = [[cos t, sin t], [-sin t, cos t]]
//   s_r  : retardance sign (+1 or -1)
//   s_a  : angle sign, t = s_a * (listed angle); +1 is counterclockwise
//   bias : constant phase added to every modulator, 0 or pi
//   modulator: P(phi) = diag(1, exp(i (phi + bias)))
// Elements act in listed order, so U = J_n ... J_2 J_1.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swapgame/config.hpp"
#include "swapgame/quantum.hpp"

namespace swapgame {

enum class ElementKind { QuarterWave, HalfWave, EighthWave, PhaseModulator };

struct ChainElement {
  ElementKind kind = ElementKind::PhaseModulator;
  /// Fast-axis angle in degrees for plates, phase in radians for modulators.
  double value = 0.0;
};

struct WaveplateChainConfig {
  std::vector<ChainElement> elements;
  /// Throws InvalidInput for an empty chain or non-finite values.
  void validate() const;
};

struct JonesConvention {
  int retardance_sign = +1;
  int angle_sign = +1;
  double modulator_bias = 0.0;
  std::string describe() const;
};

/// The eight combinations of retardance sign, angle sign and modulator bias,
/// in a fixed search order starting with (+, +, 0).
std::vector<JonesConvention> convention_set();

Matrix element_matrix(const ChainElement& e, const JonesConvention& conv = {});
Matrix jones_chain(const WaveplateChainConfig& chain,
                   const JonesConvention& conv = {});

/// U^dagger Z U.
Matrix measured_observable(const Matrix& u);

struct SettingMatch {
  bool matched = false;
  /// Frobenius norm of U^dagger Z U - sign * target at the best convention.
  double residual = 0.0;
  /// +1 if the chain measures target, -1 if it measures -target (outcome
  /// labels swapped).
  int sign = +1;
  JonesConvention convention;
};

inline constexpr double kSettingMatchTol = 1e-6;

/// Searches convention_set() for U^dagger Z U = +-target. Reports the first
/// matching convention, or the best residual when none matches.
SettingMatch verify_setting(const WaveplateChainConfig& chain,
                            const Observable& target,
                            double tol = kSettingMatchTol);

/// "Z", "-X", "(Z+X)/sqrt2", "(X-Y)/sqrt2": signed sum of Pauli terms,
/// normalized by the square root of the number of terms.
Observable parse_pauli_target(const std::string& text, int line = 0);

/// "QWP@45", "HWP@-13.68", "L8@0", "PM:pi/2".
ChainElement parse_element(const std::string& text, int line = 0);
std::string format_element(const ChainElement& e);

struct SettingRow {
  std::string party;  // section name prefix, e.g. "alice"
  int index = 0;
  std::string target_text;
  Observable target;
  WaveplateChainConfig chain;
  std::optional<double> recorded_fidelity;
};

/// Sections "[setting <party> <index>]" with keys target, elements
/// (comma-separated) and optional fidelity.
std::vector<SettingRow> load_setting_rows(const ConfigDocument& doc);

}  // namespace swapgame
