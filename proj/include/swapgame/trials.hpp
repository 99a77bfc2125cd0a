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

// Simulated experimental runs: random setting choices, sampled outcomes,
// count tables and the correlation estimator with Poissonian error bars.

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "swapgame/game.hpp"
#include "swapgame/report.hpp"

namespace swapgame {

/// Raised when a cell the estimator needs has no counts.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrialRecord {
  std::int64_t trial_id = 0;
  int x = 1;  // 1..6
  int z = 1;  // 1..3
  int b = 0;  // BellOutcome index
  int a = 1;  // +1 / -1
  int c = 1;
  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

enum class SettingSampling {
  /// Uniform over the scored combos.
  UniformScored,
  /// Uniform over all 6 x 3 pairs; draws outside the scored combos are
  /// discarded (they consume a trial id but leave no record).
  UniformAllDiscard,
};

struct SettingDistribution {
  std::vector<SettingCombo> support;
  std::vector<double> weights;
  SettingSampling mode = SettingSampling::UniformScored;

  static SettingDistribution uniform(const std::vector<SettingCombo>& combos);
  static SettingDistribution uniform_all_discard(const std::vector<SettingCombo>& combos);
};

/// Trials are generated in fixed blocks of kTrialBlock ids; block k draws from
/// substream k of `seed`, so the output does not depend on `threads`.
inline constexpr std::int64_t kTrialBlock = 4096;

/// n i.i.d. trials: (x, z) from `dist`, then (a, b, c) from the matching row
/// of `pm`. Throws InvalidInput if `dist` names a combo that `pm` lacks.
std::vector<TrialRecord> sample_trials(const ProbabilityMatrix& pm, std::int64_t n,
                                       const SettingDistribution& dist,
                                       std::uint64_t seed, int threads = 1);

/// Dense counts indexed by (x, z, b, a, c).
class CountTable {
 public:
  void add(const TrialRecord& r, std::uint64_t weight = 1);
  void add(int x, int z, int b, int a, int c, std::uint64_t weight);

  std::uint64_t count(int x, int z, int b, int a, int c) const;
  /// N(xz, b): all (a, c) for one setting pair and outcome.
  std::uint64_t cell_total(int x, int z, int b) const;
  std::uint64_t setting_total(int x, int z) const;
  std::uint64_t total() const { return total_; }

  friend bool operator==(const CountTable&, const CountTable&) = default;

 private:
  static int slot(int v) { return v > 0 ? 0 : 1; }
  std::array<std::array<std::array<std::array<std::array<std::uint64_t, 2>, 2>, 4>,
                        kClaireSettings>,
             kAliceSettings>
      counts_{};
  std::uint64_t total_ = 0;
};

CountTable tabulate(const std::vector<TrialRecord>& records);

/// Expected counts n * p rounded to the nearest integer; used to feed the
/// estimator an exact distribution.
CountTable expected_counts(const ProbabilityMatrix& pm, std::uint64_t n_per_row);

struct ValueSigma {
  double value = 0.0;
  double sigma = 0.0;
};

struct EstimateWithError {
  std::array<ValueSigma, 4> per_b;
  ValueSigma total;
};

/// E[ac | xz, b] = (N++ + N-- - N+- - N-+) / N with var (1 - E^2) / N; F_b sums
/// sign * E over the combos, sigma_b adds the variances. The total is the
/// mean of the four F_b with sigma = sqrt(sum sigma_b^2) / 4.
EstimateWithError estimate_f(const CountTable& ct, const SignTable& signs);

/// Variant weighting F_b by the observed outcome frequency N_b / N.
EstimateWithError estimate_f_weighted(const CountTable& ct, const SignTable& signs);

struct BootstrapEstimate {
  double mean = 0.0;
  double sigma = 0.0;
  int resamples = 0;
  /// Resamples skipped because a required cell came out empty.
  int skipped = 0;
};

/// Resamples every cell as Poisson(observed) and re-runs estimate_f.
BootstrapEstimate bootstrap_estimate(const CountTable& ct, const SignTable& signs,
                                     int resamples, std::uint64_t seed, int threads = 1);

/// (value - bound) / sigma; sigma must be positive.
double violation_sigma(double value, double sigma, double bound);
double violation_sigma(const EstimateWithError& est, double bound);

struct SettingFidelity {
  std::uint64_t right = 0;
  std::uint64_t wrong = 0;
  double value = 0.0;
  /// Binomial standard error sqrt(F (1 - F) / N).
  double sigma = 0.0;
};

/// F_m = C_r / (C_r + C_w); throws InsufficientData for zero counts.
SettingFidelity setting_fidelity(std::uint64_t right, std::uint64_t wrong);

/// Calibration runs prepare an eigenstate of each setting, so every trial
/// has an expected outcome. `expected_a[x-1]` (`expected_c[z-1]`) holds it;
/// the returned vector has one entry per Alice (Claire) setting.
std::vector<SettingFidelity> alice_setting_fidelity(
    const CountTable& ct, const std::array<int, kAliceSettings>& expected_a);
std::vector<SettingFidelity> claire_setting_fidelity(
    const CountTable& ct, const std::array<int, kClaireSettings>& expected_c);

/// Simulated calibration: `n_per_setting` photons per Alice setting, each
/// prepared in the +1 eigenstate and flipped with probability `flip`.
/// Claire's outcome is fixed to +1, Bob to outcome 0.
CountTable simulate_alice_calibration(std::uint64_t n_per_setting, double flip,
                                      std::uint64_t seed);

std::string trial_log_csv(const std::vector<TrialRecord>& records);
Json count_table_json(const CountTable& ct);
Json estimate_json(const EstimateWithError& est, double bound);

}  // namespace swapgame
