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

// The three-party entanglement-swapping game.
//
// Two sources emit pairs (Alice, Bob-left) and (Bob-right, Claire). Alice
// picks one of six dichotomic settings, Claire one of three, Bob always
// performs a four-outcome measurement on his two qubits. The score is
//
//   F = sum_{xz, b, a, c} sign(b, xz) * a * c * p(a b c | x z)
//
// over twelve scored (x, z) pairs. Subsystem order everywhere is
// (Alice, Bob-left, Bob-right, Claire).

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "swapgame/quantum.hpp"

namespace swapgame {

inline constexpr int kAliceSettings = 6;
inline constexpr int kClaireSettings = 3;
inline constexpr int kNumCombos = 12;
inline constexpr int kNumColumns = 16;

// Reference values of the game: local-deterministic maximum, the bound for
// real-valued quantum theory (an external constant, not derived here) and the
// complex quantum maximum 6*sqrt(2).
inline constexpr double kClassicalBound = 6.0;
inline constexpr double kRealBound = 7.66;
inline constexpr double kRealBoundCeiling = 7.6605;
inline const double kQuantumMax = 6.0 * std::sqrt(2.0);

/// One scored setting pair, 1-based (x in 1..6, z in 1..3).
struct SettingCombo {
  int x = 1;
  int z = 1;
  friend bool operator==(const SettingCombo&, const SettingCombo&) = default;
};

struct SettingsSpec {
  std::vector<Observable> alice;
  std::vector<Observable> claire;
  std::vector<SettingCombo> combos;
};

/// Alice: (Z+X)/sqrt2, (Z-X)/sqrt2, (Z+Y)/sqrt2, (Z-Y)/sqrt2, (X+Y)/sqrt2,
/// (X-Y)/sqrt2. Claire: Z, X, Y. Combos form three CHSH blocks (ZX, ZY, XY)
/// in the row order used by every report.
SettingsSpec build_settings();

/// The scored combos alone, in report row order.
const std::vector<SettingCombo>& canonical_combos();

/// Bell-basis measurement on Bob's pair, outcomes ordered as BellOutcome.
ProjectiveMeasurement bsm_measurement();

/// Raised when Bob's outcome has (numerically) zero probability and the
/// conditional state is undefined.
class DegenerateOutcome : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDegenerateProbability = 1e-12;

struct ConditionalState {
  QuantumState state;  // on Alice (x) Claire
  double probability = 0.0;
};

/// Factor dimensions of the two-source network.
struct NetworkDims {
  int alice = 2;
  int bob_left = 2;
  int bob_right = 2;
  int claire = 2;
};

/// Alice-Claire state after Bob's pair is projected onto `bob_projector`,
/// together with the probability of that outcome. Throws DegenerateOutcome
/// when the probability is below kDegenerateProbability.
ConditionalState conditional_state(const QuantumState& rho1,
                                   const QuantumState& rho2,
                                   const Matrix& bob_projector,
                                   const NetworkDims& dims);

/// Qubit case with a Bell-basis outcome.
ConditionalState conditional_state(const QuantumState& rho1,
                                   const QuantumState& rho2, BellOutcome b);

/// sign(b, combo) in {+1, -1}, combined with the outcome product a*c to form
/// the game weight.
class SignTable {
 public:
  SignTable(std::vector<SettingCombo> combos,
            std::array<std::vector<int>, 4> signs);

  const std::vector<SettingCombo>& combos() const { return combos_; }
  int sign(BellOutcome b, std::size_t combo) const;
  int sign(int b, std::size_t combo) const;

 private:
  std::vector<SettingCombo> combos_;
  std::array<std::vector<int>, 4> signs_;
};

/// Signs are read off the ideal conditional Bell states: sign(b, xz) is the
/// sign of <A_x (x) C_z> on the state Alice and Claire share after outcome b
/// on two perfect EPR pairs. Throws if any correlator magnitude is below 0.5
/// or the per-outcome sum misses 6*sqrt(2).
SignTable derive_sign_table(const SettingsSpec& settings);

/// Conditional joint distribution p(a b c | x z): one row per scored combo,
/// sixteen columns labelled a b1 b2 c. Bit 0 means outcome +1 for a and c;
/// b1 b2 indexes the Bell outcome (00 Phi+, 01 Psi+, 10 Phi-, 11 Psi-).
struct ProbabilityMatrix {
  std::vector<SettingCombo> combos;
  std::vector<std::array<double, kNumColumns>> rows;
  /// Outcomes whose probability was below kDegenerateProbability while the
  /// matrix was built. Their entries are zero.
  std::vector<BellOutcome> degenerate;

  static int column(int a, BellOutcome b, int c);
  static int column(int a, int b, int c);
  static std::string column_label(int col);
  static int column_a(int col);
  static int column_b(int col);
  static int column_c(int col);

  double at(std::size_t row, int a, BellOutcome b, int c) const {
    return rows.at(row)[column(a, b, c)];
  }
  /// p(b | xz) for a row.
  double bob_marginal(std::size_t row, int b) const;

  void validate(double tol = 1e-9) const;
};

/// Ideal-measurement matrix for two-qubit sources: Bell measurement by Bob,
/// the canonical settings for Alice and Claire.
ProbabilityMatrix probability_matrix(const QuantumState& rho1,
                                     const QuantumState& rho2,
                                     const SettingsSpec& settings);

/// General strategy version: arbitrary local dimensions, dichotomic
/// observables and a four-outcome projective measurement for Bob.
ProbabilityMatrix probability_matrix(const QuantumState& rho1,
                                     const QuantumState& rho2,
                                     const std::vector<Observable>& alice,
                                     const std::vector<Observable>& claire,
                                     const ProjectiveMeasurement& bob,
                                     const std::vector<SettingCombo>& combos,
                                     const NetworkDims& dims);

/// Built from conditional states already known per outcome; used by the
/// noise models, which modify the conditional state before Alice and Claire
/// measure.
ProbabilityMatrix probability_matrix_from_conditionals(
    const std::array<std::optional<ConditionalState>, 4>& conditionals,
    const SettingsSpec& settings);

struct GameScore {
  /// Conditional sums sum_xz sign * E[a c | xz, b]; empty for an outcome that
  /// never occurs.
  std::array<std::optional<double>, 4> per_b;
  double total = 0.0;
};

GameScore score(const ProbabilityMatrix& pm, const SignTable& signs);

/// Value of one deterministic local strategy: Alice answers alice[x-1],
/// Claire answers claire[z-1], Bob always reports b.
double deterministic_value(const SignTable& signs, int b,
                           const std::array<int, kAliceSettings>& alice,
                           const std::array<int, kClaireSettings>& claire);

/// Exhaustive maximum over the 2^6 * 2^3 * 4 deterministic strategies.
double classical_max(const SignTable& signs);

}  // namespace swapgame
