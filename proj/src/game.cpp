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

#include "swapgame/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace swapgame {

namespace {

Observable normalized_sum(Pauli p, Pauli q, double sign) {
  return Observable::dichotomic((pauli_matrix(p) + sign * pauli_matrix(q)) /
                                std::sqrt(2.0));
}

void check_combos(const std::vector<SettingCombo>& combos, std::size_t n_alice,
                  std::size_t n_claire) {
  for (const SettingCombo& c : combos) {
    if (c.x < 1 || c.x > static_cast<int>(n_alice) || c.z < 1 ||
        c.z > static_cast<int>(n_claire)) {
      std::ostringstream os;
      os << "setting combo (" << c.x << "," << c.z << ") out of range";
      throw InvalidInput(os.str());
    }
  }
}

}  // namespace

const std::vector<SettingCombo>& canonical_combos() {
  static const std::vector<SettingCombo> combos = {
      {1, 1}, {1, 2}, {2, 1}, {2, 2},   // Z/X block
      {3, 1}, {3, 3}, {4, 1}, {4, 3},   // Z/Y block
      {5, 2}, {5, 3}, {6, 2}, {6, 3}};  // X/Y block
  return combos;
}

SettingsSpec build_settings() {
  SettingsSpec s;
  s.alice = {normalized_sum(Pauli::Z, Pauli::X, +1.0),
             normalized_sum(Pauli::Z, Pauli::X, -1.0),
             normalized_sum(Pauli::Z, Pauli::Y, +1.0),
             normalized_sum(Pauli::Z, Pauli::Y, -1.0),
             normalized_sum(Pauli::X, Pauli::Y, +1.0),
             normalized_sum(Pauli::X, Pauli::Y, -1.0)};
  s.claire = {pauli(Pauli::Z), pauli(Pauli::X), pauli(Pauli::Y)};
  s.combos = canonical_combos();
  return s;
}

ProjectiveMeasurement bsm_measurement() {
  std::vector<std::string> labels;
  std::vector<Matrix> projectors;
  for (BellOutcome b : kBellOutcomes) {
    labels.emplace_back(to_string(b));
    const Vector v = bell_vector(b);
    projectors.push_back(v * v.adjoint());
  }
  return ProjectiveMeasurement(std::move(labels), std::move(projectors));
}

// ---------------------------------------------------------------------------
// Entanglement swapping

namespace {

// Unnormalized Alice-Claire operator tr_Bob[(I (x) P (x) I) rho1 (x) rho2 (...)].
Matrix swapped_operator(const QuantumState& rho1, const QuantumState& rho2,
                        const Matrix& bob_projector, const NetworkDims& dims) {
  if (rho1.dim() != dims.alice * dims.bob_left ||
      rho2.dim() != dims.bob_right * dims.claire) {
    throw InvalidInput("conditional_state: source dimensions do not match dims");
  }
  if (bob_projector.rows() != dims.bob_left * dims.bob_right ||
      bob_projector.cols() != bob_projector.rows()) {
    throw InvalidInput("conditional_state: Bob projector has wrong dimension");
  }
  const Matrix full = kron(rho1.matrix(), rho2.matrix());
  const Matrix lift = kron(Matrix::Identity(dims.alice, dims.alice),
                           kron(bob_projector,
                                Matrix::Identity(dims.claire, dims.claire)));
  const Matrix projected = lift * full * lift;
  const std::array<int, 4> factor = {dims.alice, dims.bob_left, dims.bob_right,
                                     dims.claire};
  const std::array<int, 2> keep = {0, 3};
  return partial_trace(projected, keep, factor);
}

}  // namespace

ConditionalState conditional_state(const QuantumState& rho1,
                                   const QuantumState& rho2,
                                   const Matrix& bob_projector,
                                   const NetworkDims& dims) {
  const Matrix unnormalized = swapped_operator(rho1, rho2, bob_projector, dims);
  const double prob = unnormalized.trace().real();
  if (!(prob >= kDegenerateProbability)) {
    std::ostringstream os;
    os << "Bob outcome probability " << prob
       << " is degenerate; conditional state undefined";
    throw DegenerateOutcome(os.str());
  }
  return ConditionalState{QuantumState(hermitian_part(unnormalized / prob)), prob};
}

ConditionalState conditional_state(const QuantumState& rho1,
                                   const QuantumState& rho2, BellOutcome b) {
  if (rho1.dim() != 4 || rho2.dim() != 4) {
    throw InvalidInput("conditional_state: both sources must be two-qubit states");
  }
  const Vector v = bell_vector(b);
  return conditional_state(rho1, rho2, v * v.adjoint(), NetworkDims{});
}

// ---------------------------------------------------------------------------
// Sign table

SignTable::SignTable(std::vector<SettingCombo> combos,
                     std::array<std::vector<int>, 4> signs)
    : combos_(std::move(combos)), signs_(std::move(signs)) {
  for (const auto& row : signs_) {
    if (row.size() != combos_.size()) {
      throw InvalidInput("SignTable: every outcome needs one sign per combo");
    }
    for (int s : row) {
      if (s != 1 && s != -1) throw InvalidInput("SignTable: signs must be +1/-1");
    }
  }
}

int SignTable::sign(BellOutcome b, std::size_t combo) const {
  return sign(index_of(b), combo);
}

int SignTable::sign(int b, std::size_t combo) const {
  return signs_.at(static_cast<std::size_t>(b)).at(combo);
}

SignTable derive_sign_table(const SettingsSpec& settings) {
  check_combos(settings.combos, settings.alice.size(), settings.claire.size());
  const QuantumState epr = bell_state(BellOutcome::PhiPlus);
  std::array<std::vector<int>, 4> signs;
  for (BellOutcome b : kBellOutcomes) {
    const ConditionalState cond = conditional_state(epr, epr, b);
    double block_sum = 0.0;
    for (const SettingCombo& c : settings.combos) {
      const Observable joint =
          tensor(settings.alice[c.x - 1], settings.claire[c.z - 1]);
      const double e = expectation(cond.state, joint);
      if (std::abs(e) < 0.5) {
        std::ostringstream os;
        os << "derive_sign_table: ideal correlator for (" << c.x << "," << c.z
           << ") given " << to_string(b) << " is " << e
           << "; combo set is not a valid game";
        throw InvalidInput(os.str());
      }
      const int s = e > 0.0 ? 1 : -1;
      signs[index_of(b)].push_back(s);
      block_sum += s * e;
    }
    const double expected = static_cast<double>(settings.combos.size()) / std::sqrt(2.0);
    if (std::abs(block_sum - expected) > 1e-9) {
      std::ostringstream os;
      os << "derive_sign_table: ideal sum for " << to_string(b) << " is "
         << block_sum << ", expected " << expected;
      throw std::logic_error(os.str());
    }
  }
  return SignTable(settings.combos, std::move(signs));
}

// ---------------------------------------------------------------------------
// Probability matrix

int ProbabilityMatrix::column(int a, int b, int c) {
  if ((a != 1 && a != -1) || (c != 1 && c != -1) || b < 0 || b > 3) {
    throw InvalidInput("ProbabilityMatrix::column: invalid outcome");
  }
  const int abit = a == 1 ? 0 : 1;
  const int cbit = c == 1 ? 0 : 1;
  return abit * 8 + b * 2 + cbit;
}

int ProbabilityMatrix::column(int a, BellOutcome b, int c) {
  return column(a, index_of(b), c);
}

int ProbabilityMatrix::column_a(int col) { return (col >> 3) & 1 ? -1 : 1; }
int ProbabilityMatrix::column_b(int col) { return (col >> 1) & 3; }
int ProbabilityMatrix::column_c(int col) { return col & 1 ? -1 : 1; }

std::string ProbabilityMatrix::column_label(int col) {
  std::string s(4, '0');
  for (int bit = 0; bit < 4; ++bit) {
    if ((col >> (3 - bit)) & 1) s[bit] = '1';
  }
  return s;
}

double ProbabilityMatrix::bob_marginal(std::size_t row, int b) const {
  double p = 0.0;
  for (int a : {1, -1}) {
    for (int c : {1, -1}) p += rows.at(row)[column(a, b, c)];
  }
  return p;
}

void ProbabilityMatrix::validate(double tol) const {
  if (rows.size() != combos.size()) {
    throw InvalidInput("ProbabilityMatrix: row count differs from combo count");
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    double sum = 0.0;
    for (double p : rows[r]) {
      if (!(p >= -tol)) throw InvalidInput("ProbabilityMatrix: negative entry");
      sum += p;
    }
    if (std::abs(sum - 1.0) > tol) {
      std::ostringstream os;
      os << "ProbabilityMatrix: row " << r << " sums to " << sum;
      throw InvalidInput(os.str());
    }
  }
}

namespace {

ProbabilityMatrix fill_matrix(
    const std::array<std::optional<ConditionalState>, 4>& conditionals,
    const std::vector<Observable>& alice, const std::vector<Observable>& claire,
    const std::vector<SettingCombo>& combos) {
  check_combos(combos, alice.size(), claire.size());
  ProbabilityMatrix pm;
  pm.combos = combos;
  pm.rows.assign(combos.size(), {});
  for (int b = 0; b < 4; ++b) {
    if (!conditionals[b]) pm.degenerate.push_back(static_cast<BellOutcome>(b));
  }
  for (std::size_t r = 0; r < combos.size(); ++r) {
    const Observable& ax = alice[combos[r].x - 1];
    const Observable& cz = claire[combos[r].z - 1];
    for (int b = 0; b < 4; ++b) {
      const auto& cond = conditionals[b];
      if (!cond) continue;
      if (cond->state.dim() != ax.dim() * cz.dim()) {
        throw InvalidInput("probability_matrix: observable dimensions do not match");
      }
      for (int a : {1, -1}) {
        for (int c : {1, -1}) {
          const Matrix proj = kron(ax.eigenprojector(a), cz.eigenprojector(c));
          const double pac = (proj * cond->state.matrix()).trace().real();
          pm.rows[r][ProbabilityMatrix::column(a, b, c)] =
              std::max(0.0, cond->probability * pac);
        }
      }
    }
  }
  return pm;
}

}  // namespace

ProbabilityMatrix probability_matrix_from_conditionals(
    const std::array<std::optional<ConditionalState>, 4>& conditionals,
    const SettingsSpec& settings) {
  return fill_matrix(conditionals, settings.alice, settings.claire,
                     settings.combos);
}

ProbabilityMatrix probability_matrix(const QuantumState& rho1,
                                     const QuantumState& rho2,
                                     const std::vector<Observable>& alice,
                                     const std::vector<Observable>& claire,
                                     const ProjectiveMeasurement& bob,
                                     const std::vector<SettingCombo>& combos,
                                     const NetworkDims& dims) {
  if (bob.size() != 4) {
    throw InvalidInput("probability_matrix: Bob's measurement needs four outcomes");
  }
  std::array<std::optional<ConditionalState>, 4> conds;
  for (int b = 0; b < 4; ++b) {
    try {
      conds[b] = conditional_state(rho1, rho2, bob.projector(b), dims);
    } catch (const DegenerateOutcome&) {
      conds[b].reset();
    }
  }
  return fill_matrix(conds, alice, claire, combos);
}

ProbabilityMatrix probability_matrix(const QuantumState& rho1,
                                     const QuantumState& rho2,
                                     const SettingsSpec& settings) {
  return probability_matrix(rho1, rho2, settings.alice, settings.claire,
                            bsm_measurement(), settings.combos, NetworkDims{});
}

// ---------------------------------------------------------------------------
// Scores

GameScore score(const ProbabilityMatrix& pm, const SignTable& signs) {
  if (pm.combos != signs.combos() || pm.rows.size() != pm.combos.size()) {
    throw InvalidInput("score: probability matrix and sign table disagree on combos");
  }
  GameScore out;
  std::array<double, 4> conditional_sum{};
  std::array<bool, 4> defined{true, true, true, true};
  for (std::size_t r = 0; r < pm.rows.size(); ++r) {
    for (int b = 0; b < 4; ++b) {
      const int s = signs.sign(b, r);
      double correlation = 0.0;  // sum_ac a c p(abc|xz)
      for (int a : {1, -1}) {
        for (int c : {1, -1}) {
          correlation += a * c * pm.rows[r][ProbabilityMatrix::column(a, b, c)];
        }
      }
      out.total += s * correlation;
      const double pb = pm.bob_marginal(r, b);
      if (pb < kDegenerateProbability) {
        defined[b] = false;
      } else {
        conditional_sum[b] += s * correlation / pb;
      }
    }
  }
  for (int b = 0; b < 4; ++b) {
    if (defined[b]) out.per_b[b] = conditional_sum[b];
  }
  return out;
}

double deterministic_value(const SignTable& signs, int b,
                           const std::array<int, kAliceSettings>& alice,
                           const std::array<int, kClaireSettings>& claire) {
  double value = 0.0;
  const auto& combos = signs.combos();
  for (std::size_t k = 0; k < combos.size(); ++k) {
    value += signs.sign(b, k) * alice.at(combos[k].x - 1) * claire.at(combos[k].z - 1);
  }
  return value;
}

double classical_max(const SignTable& signs) {
  check_combos(signs.combos(), kAliceSettings, kClaireSettings);
  double best = -std::numeric_limits<double>::infinity();
  std::array<int, kAliceSettings> alice{};
  std::array<int, kClaireSettings> claire{};
  for (int b = 0; b < 4; ++b) {
    for (unsigned amask = 0; amask < (1u << kAliceSettings); ++amask) {
      for (int x = 0; x < kAliceSettings; ++x) alice[x] = (amask >> x) & 1u ? -1 : 1;
      for (unsigned cmask = 0; cmask < (1u << kClaireSettings); ++cmask) {
        for (int z = 0; z < kClaireSettings; ++z) claire[z] = (cmask >> z) & 1u ? -1 : 1;
        best = std::max(best, deterministic_value(signs, b, alice, claire));
      }
    }
  }
  return best;
}

}  // namespace swapgame
