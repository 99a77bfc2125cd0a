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

#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "swapgame/config.hpp"
#include "swapgame/noise.hpp"

namespace swapgame {
namespace {

const double kRoot2 = std::sqrt(2.0);

TEST(Werner, EndpointsAreBellAndMixed) {
  EXPECT_TRUE(werner(1.0).matrix().isApprox(bell_state(BellOutcome::PhiPlus).matrix()));
  EXPECT_TRUE(werner(0.0).matrix().isApprox(Matrix::Identity(4, 4) / 4.0));
  EXPECT_THROW(werner(1.5), InvalidInput);
  EXPECT_THROW(werner(-0.1), InvalidInput);
}

TEST(Werner, FidelityIsAffineInP) {
  // F = p + (1 - p) / 4.
  for (double p : {0.0, 0.3, 0.980267, 1.0}) {
    EXPECT_NEAR(fidelity(werner(p), bell_state(BellOutcome::PhiPlus)), p + (1.0 - p) / 4.0, 1e-12);
  }
  EXPECT_NEAR(fidelity(werner(0.980267), bell_state(BellOutcome::PhiPlus)), 0.9852, 1e-6);
}

TEST(PFromFidelity, InvertsTheAffineMap) {
  EXPECT_NEAR(p_from_fidelity(0.9852), 0.980267, 1e-6);
  EXPECT_NEAR(p_from_fidelity(0.9892), 0.985600, 1e-6);
  EXPECT_DOUBLE_EQ(p_from_fidelity(1.0), 1.0);
  EXPECT_NEAR(p_from_fidelity(0.25), 0.0, 1e-15);
  EXPECT_THROW(p_from_fidelity(0.2), InvalidInput);
  for (double f = 0.25; f <= 1.0; f += 0.05) {
    EXPECT_NEAR(fidelity(werner(p_from_fidelity(f)), bell_state(BellOutcome::PhiPlus)), f, 1e-12);
  }
}

TEST(NoisyBsm, FullVisibilityIsIdeal) {
  const QuantumState a = werner(0.9);
  const QuantumState b = werner(0.8);
  for (BellOutcome o : kBellOutcomes) {
    const ConditionalState ideal = conditional_state(a, b, o);
    const ConditionalState noisy = noisy_conditional_state(a, b, o, 1.0);
    EXPECT_TRUE(noisy.state.matrix().isApprox(ideal.state.matrix(), 1e-14));
    EXPECT_DOUBLE_EQ(noisy.probability, ideal.probability);
  }
}

TEST(NoisyBsm, ZeroVisibilityDephases) {
  const QuantumState phi = bell_state(BellOutcome::PhiPlus);
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(3, 3) = 0.5;
  const ConditionalState cs = noisy_conditional_state(phi, phi, BellOutcome::PhiPlus, 0.0);
  EXPECT_TRUE(cs.state.matrix().isApprox(expected, 1e-12));
  EXPECT_NEAR(cs.probability, 0.25, 1e-12);
}

TEST(NoisyBsm, OnlyTransverseCorrelationsShrink) {
  const QuantumState phi = bell_state(BellOutcome::PhiPlus);
  const double v = 0.943;
  for (BellOutcome o : kBellOutcomes) {
    const ConditionalState ideal = conditional_state(phi, phi, o);
    const ConditionalState noisy = noisy_conditional_state(phi, phi, o, v);
    const auto corr = [](const QuantumState& s, char p) { return expectation(s, tensor(pauli(p), pauli(p))); };
    EXPECT_NEAR(std::abs(corr(noisy.state, 'Z')), 1.0, 1e-12);
    EXPECT_NEAR(corr(noisy.state, 'Z'), corr(ideal.state, 'Z'), 1e-12);
    EXPECT_NEAR(corr(noisy.state, 'X'), v * corr(ideal.state, 'X'), 1e-12);
    EXPECT_NEAR(std::abs(corr(noisy.state, 'X')), v, 1e-12);
    EXPECT_NEAR(corr(noisy.state, 'Y'), v * corr(ideal.state, 'Y'), 1e-12);
  }
}

TEST(Prediction, ReferenceMatchesClosedForm) {
  const NoiseParams np = reference_noise_params();
  EXPECT_NEAR(np.p1, 0.980267, 1e-6);
  EXPECT_NEAR(np.p2, 0.985600, 1e-6);
  const double closed = np.p1 * np.p2 * (4.0 + 8.0 * 0.943) / kRoot2;
  const GameScore g = predicted_score(np);
  EXPECT_NEAR(g.total, closed, 1e-6);
  EXPECT_NEAR(closed_form_score(np.p1, np.p2, 0.943), closed, 1e-12);
  EXPECT_NEAR(g.total, 7.89, 0.01);
  EXPECT_GE(g.total, 7.7);
  EXPECT_LE(g.total, 8.0);
}

TEST(Prediction, PerfectParametersGiveSixRootTwo) {
  NoiseParams np;
  EXPECT_NEAR(predicted_score(np).total, 6.0 * kRoot2, 1e-9);
}

TEST(Prediction, MixedSourcesGiveZero) {
  NoiseParams np;
  np.p1 = 0.0;
  np.p2 = 0.0;
  for (double v : {0.0, 0.5, 1.0}) {
    np.v_bsm = v;
    EXPECT_NEAR(predicted_score(np).total, 0.0, 1e-12);
  }
}

TEST(Prediction, ClosedFormAgreesAcrossGrid) {
  for (double p1 : {0.5, 0.9, 1.0}) {
    for (double v : {0.0, 0.6, 0.943}) {
      for (double f : {1.0, 0.99, 0.9}) {
        NoiseParams np;
        np.p1 = p1;
        np.p2 = 0.95;
        np.v_bsm = v;
        np.f_setting = f;
        EXPECT_NEAR(predicted_score(np).total, closed_form_score(p1, 0.95, v, f), 1e-9);
      }
    }
  }
}

TEST(SettingFlips, CorrelatorsScaleByBothFidelities) {
  NoiseParams np;
  np.f_alice = std::array<double, 6>{0.996, 0.993, 0.994, 0.995, 0.992, 0.993};
  np.f_claire = std::array<double, 3>{0.994, 0.995, 0.991};
  const SettingsSpec s = build_settings();
  const QuantumState phi = bell_state(BellOutcome::PhiPlus);
  const ProbabilityMatrix ideal = probability_matrix(phi, phi, s);
  const ProbabilityMatrix flipped = apply_setting_flips(ideal, np);
  for (std::size_t r = 0; r < ideal.rows.size(); ++r) {
    const double scale = (2.0 * np.alice_fidelity(ideal.combos[r].x) - 1.0) *
                         (2.0 * np.claire_fidelity(ideal.combos[r].z) - 1.0);
    for (BellOutcome b : kBellOutcomes) {
      const auto e = [&](const ProbabilityMatrix& pm) {
        double v = 0.0;
        for (int a : {1, -1})
          for (int c : {1, -1}) v += a * c * pm.at(r, a, b, c);
        return v;
      };
      EXPECT_NEAR(e(flipped), scale * e(ideal), 1e-12);
      EXPECT_NEAR(flipped.bob_marginal(r, index_of(b)), ideal.bob_marginal(r, index_of(b)), 1e-12);
    }
  }
}

TEST(Config, LoadsFixture) {
  const NoiseParams np = load_noise_params(
      ConfigDocument::parse(read_text_file(std::string(SWAPGAME_FIXTURE_DIR) + "/paper-noise.cfg")));
  EXPECT_NEAR(np.p1, p_from_fidelity(0.9852), 1e-12);
  EXPECT_NEAR(np.p2, p_from_fidelity(0.9892), 1e-12);
  EXPECT_DOUBLE_EQ(np.v_bsm, 0.943);
  EXPECT_DOUBLE_EQ(np.f_setting, 1.0);
  EXPECT_FALSE(np.f_alice.has_value());
}

TEST(Config, PerSettingFixture) {
  const NoiseParams np = load_noise_params(ConfigDocument::parse(
      read_text_file(std::string(SWAPGAME_FIXTURE_DIR) + "/paper-noise-settings.cfg")));
  ASSERT_TRUE(np.f_alice.has_value());
  EXPECT_DOUBLE_EQ(np.alice_fidelity(5), 0.992);
  EXPECT_DOUBLE_EQ(np.claire_fidelity(3), 0.991);
}

TEST(Config, ErrorsCarryLineNumbers) {
  try {
    load_noise_params(ConfigDocument::parse("fidelity1 = 0.98\nv_bsm = lots\n"));
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  try {
    load_noise_params(ConfigDocument::parse("f_alice = 0.9 0.9\n"));
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 1);
  }
  EXPECT_THROW(load_noise_params(ConfigDocument::parse("fidelity1 = 0.98\np1 = 0.9\n")), ConfigError);
  EXPECT_THROW(load_noise_params(ConfigDocument::parse("v_bsm = 1.2\n")), ConfigError);
}

}  // namespace
}  // namespace swapgame
