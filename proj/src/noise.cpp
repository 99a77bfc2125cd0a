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

#include "swapgame/noise.hpp"

#include <cmath>
#include <sstream>

namespace swapgame {

namespace {

void require_unit_interval(double v, const char* what, double lo = 0.0) {
  if (!(v >= lo && v <= 1.0)) {
    std::ostringstream os;
    os << what << " = " << v << " is outside [" << lo << ", 1]";
    throw InvalidInput(os.str());
  }
}

}  // namespace

QuantumState werner(double p) {
  require_unit_interval(p, "Werner parameter");
  const Vector phi = bell_vector(BellOutcome::PhiPlus);
  return QuantumState(p * phi * phi.adjoint() +
                      (1.0 - p) * Matrix::Identity(4, 4) / 4.0);
}

double p_from_fidelity(double f) {
  if (!(f >= 0.25 && f <= 1.0)) {
    std::ostringstream os;
    os << "fidelity " << f << " is not reachable by a Werner state (needs [0.25, 1])";
    throw InvalidInput(os.str());
  }
  return (4.0 * f - 1.0) / 3.0;
}

Matrix dephase_computational(const Matrix& rho) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  out.diagonal() = rho.diagonal();
  return out;
}

ConditionalState noisy_conditional_state(const QuantumState& rho1,
                                         const QuantumState& rho2,
                                         BellOutcome b, double v) {
  require_unit_interval(v, "BSM visibility");
  ConditionalState ideal = conditional_state(rho1, rho2, b);
  if (v == 1.0) return ideal;
  const Matrix& m = ideal.state.matrix();
  return ConditionalState{
      QuantumState(v * m + (1.0 - v) * dephase_computational(m)),
      ideal.probability};
}

double NoiseParams::alice_fidelity(int x) const {
  return f_alice ? f_alice->at(x - 1) : f_setting;
}

double NoiseParams::claire_fidelity(int z) const {
  return f_claire ? f_claire->at(z - 1) : f_setting;
}

void NoiseParams::validate() const {
  require_unit_interval(p1, "p1");
  require_unit_interval(p2, "p2");
  require_unit_interval(v_bsm, "v_bsm");
  require_unit_interval(f_setting, "f_setting", 0.5);
  if (f_alice) {
    for (double f : *f_alice) require_unit_interval(f, "f_alice", 0.5);
  }
  if (f_claire) {
    for (double f : *f_claire) require_unit_interval(f, "f_claire", 0.5);
  }
}

NoiseParams reference_noise_params() {
  NoiseParams np;
  np.p1 = p_from_fidelity(0.9852);
  np.p2 = p_from_fidelity(0.9892);
  np.v_bsm = 0.943;
  np.f_setting = 1.0;
  return np;
}

namespace {

template <std::size_t N>
std::array<double, N> parse_list(const ConfigEntry& e) {
  const auto tokens = split_whitespace(e.value);
  if (tokens.size() != N) {
    std::ostringstream os;
    os << "'" << e.key << "' needs " << N << " values, got " << tokens.size();
    throw ConfigError(e.line, os.str());
  }
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = parse_double(tokens[i], e.line);
  return out;
}

double source_parameter(const ConfigSection& g, const char* fidelity_key,
                        const char* p_key) {
  const ConfigEntry* f = g.find(fidelity_key);
  const ConfigEntry* p = g.find(p_key);
  if (f && p) {
    throw ConfigError(p->line, std::string("give either ") + fidelity_key +
                                   " or " + p_key + ", not both");
  }
  try {
    if (f) return p_from_fidelity(parse_double(f->value, f->line));
  } catch (const InvalidInput& err) {
    throw ConfigError(f->line, err.what());
  }
  if (p) return parse_double(p->value, p->line);
  return 1.0;
}

}  // namespace

NoiseParams load_noise_params(const ConfigDocument& doc) {
  const ConfigSection& g = doc.globals();
  NoiseParams np;
  np.p1 = source_parameter(g, "fidelity1", "p1");
  np.p2 = source_parameter(g, "fidelity2", "p2");
  if (const ConfigEntry* e = g.find("v_bsm")) np.v_bsm = parse_double(e->value, e->line);
  if (const ConfigEntry* e = g.find("f_setting")) {
    np.f_setting = parse_double(e->value, e->line);
  }
  if (const ConfigEntry* e = g.find("f_alice")) np.f_alice = parse_list<kAliceSettings>(*e);
  if (const ConfigEntry* e = g.find("f_claire")) {
    np.f_claire = parse_list<kClaireSettings>(*e);
  }
  try {
    np.validate();
  } catch (const InvalidInput& err) {
    throw ConfigError(0, err.what());
  }
  return np;
}

ProbabilityMatrix apply_setting_flips(const ProbabilityMatrix& pm,
                                      const NoiseParams& np) {
  ProbabilityMatrix out = pm;
  for (std::size_t r = 0; r < pm.rows.size(); ++r) {
    const double qa = 1.0 - np.alice_fidelity(pm.combos[r].x);
    const double qc = 1.0 - np.claire_fidelity(pm.combos[r].z);
    if (qa == 0.0 && qc == 0.0) continue;
    for (int b = 0; b < 4; ++b) {
      for (int a : {1, -1}) {
        for (int c : {1, -1}) {
          double p = 0.0;
          for (int a0 : {1, -1}) {
            for (int c0 : {1, -1}) {
              const double wa = a0 == a ? 1.0 - qa : qa;
              const double wc = c0 == c ? 1.0 - qc : qc;
              p += wa * wc * pm.rows[r][ProbabilityMatrix::column(a0, b, c0)];
            }
          }
          out.rows[r][ProbabilityMatrix::column(a, b, c)] = p;
        }
      }
    }
  }
  return out;
}

ProbabilityMatrix noisy_probability_matrix(const NoiseParams& np,
                                           const SettingsSpec& settings) {
  np.validate();
  const QuantumState rho1 = werner(np.p1);
  const QuantumState rho2 = werner(np.p2);
  std::array<std::optional<ConditionalState>, 4> conds;
  for (int b = 0; b < 4; ++b) {
    try {
      conds[b] = noisy_conditional_state(rho1, rho2, static_cast<BellOutcome>(b),
                                         np.v_bsm);
    } catch (const DegenerateOutcome&) {
      conds[b].reset();
    }
  }
  return apply_setting_flips(probability_matrix_from_conditionals(conds, settings),
                             np);
}

GameScore predicted_score(const NoiseParams& np) {
  const SettingsSpec settings = build_settings();
  return score(noisy_probability_matrix(np, settings), derive_sign_table(settings));
}

double closed_form_score(double p1, double p2, double v, double f_setting) {
  const double flip = (2.0 * f_setting - 1.0) * (2.0 * f_setting - 1.0);
  return p1 * p2 * (4.0 + 8.0 * v) / std::sqrt(2.0) * flip;
}

}  // namespace swapgame
