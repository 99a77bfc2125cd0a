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

// See-saw maximization of the game value over quantum strategies of fixed
// local dimension. The value is linear in each component (either source
// state, each observable, Bob's projectors), so holding all but one fixed
// leaves a spectral problem for the free one.
//
// Real mode keeps every matrix real; it explores the real-number bound from
// below and can never certify it.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "swapgame/game.hpp"
#include "swapgame/quantum.hpp"
#include "swapgame/report.hpp"

namespace swapgame {

enum class Field { Complex, Real };

std::string_view to_string(Field f);
/// "complex" or "real".
Field parse_field(std::string_view text);

struct StrategyDims {
  int alice = 2;
  int bob_left = 2;
  int bob_right = 2;
  int claire = 2;
  friend bool operator==(const StrategyDims&, const StrategyDims&) = default;
};

/// "2,2,2,2" or "2x2x2x2".
StrategyDims parse_dims(std::string_view text);

/// Bob's measurement stored as an orthonormal basis whose vectors are each
/// assigned to one of the four outcomes.
struct BobBasis {
  Matrix basis;             // columns are basis vectors
  std::vector<int> labels;  // outcome of each column, 0..3

  std::array<Matrix, 4> projectors() const;
};

/// Raw matrices of a strategy, used inside the optimization loop.
struct StrategyMatrices {
  Field field = Field::Complex;
  StrategyDims dims;
  Matrix rho1;  // alice (x) bob_left
  Matrix rho2;  // bob_right (x) claire
  std::array<Matrix, kAliceSettings> alice;
  std::array<Matrix, kClaireSettings> claire;
  BobBasis bob;

  /// Largest |Im| over every entry.
  double max_imaginary() const;
};

/// Validated strategy: every component checked by quantum-core.
struct Strategy {
  Field field;
  StrategyDims dims;
  QuantumState rho1;
  QuantumState rho2;
  std::vector<Observable> alice;
  std::vector<Observable> claire;
  ProjectiveMeasurement bob;
};

Strategy to_strategy(const StrategyMatrices& m);

/// Ideal complex qubit strategy: two EPR pairs, the canonical settings and
/// the Bell measurement.
StrategyMatrices ideal_strategy();

/// Haar-random pure states, random dichotomic observables and a random
/// labelled basis for Bob (orthogonal group in real mode).
StrategyMatrices random_strategy(Field field, const StrategyDims& dims, std::uint64_t seed,
                                 std::uint64_t stream);

double game_value(const StrategyMatrices& s, const SignTable& signs);

/// score(probability_matrix(strategy)) through the general pipeline of the
/// game module; an independent check of game_value.
double independent_value(const Strategy& s, const SignTable& signs);

// Operators whose pairing with the held-out component gives the game value:
//   F = sum_b tr(P_b M_b) = sum_x tr(A_x K_x) = sum_z tr(C_z L_z)
//     = tr(rho1 W1) = tr(rho2 W2).
std::array<Matrix, 4> bob_operators(const StrategyMatrices& s, const SignTable& signs);
std::array<Matrix, kAliceSettings> alice_operators(const StrategyMatrices& s,
                                                   const SignTable& signs);
std::array<Matrix, kClaireSettings> claire_operators(const StrategyMatrices& s,
                                                     const SignTable& signs);
Matrix source1_operator(const StrategyMatrices& s, const SignTable& signs);
Matrix source2_operator(const StrategyMatrices& s, const SignTable& signs);

/// Sign of a Hermitian operator; zero eigenvalues map to +1.
Matrix update_observable(const Matrix& op, Field field = Field::Complex);

/// Projector onto a top eigenvector.
Matrix update_state(const Matrix& op, Field field = Field::Complex);

/// Projective measurement maximizing sum_b tr(P_b M_b) over labelled bases:
/// greedy spectral deflation followed by pairwise Jacobi rotations and
/// reassignment. When `current` is given it is refined too and the better
/// result is kept, so the objective never drops below current's. Equal M_b
/// give the computational basis split into contiguous outcome groups.
BobBasis update_bob_basis(const std::array<Matrix, 4>& ops, Field field,
                          const BobBasis* current = nullptr);
/// Jacobi refinement of `current` with its outcome labels held fixed.
BobBasis rotate_bob_basis(const std::array<Matrix, 4>& ops, Field field,
                          const BobBasis& current);

ProjectiveMeasurement update_bob(const std::array<Matrix, 4>& ops,
                                 Field field = Field::Complex);

double bob_objective(const BobBasis& bob, const std::array<Matrix, 4>& ops);

struct OptimizerConfig {
  int restarts = 50;
  int max_iters = 500;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  int threads = 1;
  void validate() const;
};

struct RestartResult {
  double value = 0.0;
  int iterations = 0;
  /// Leading sweeps run with Bob's outcome labels frozen.
  int fixed_label_iterations = 0;
  bool converged = false;
  /// Steps whose update lowered the value and were rolled back.
  int reverted_steps = 0;
  std::vector<double> trace;  // value after each sweep, starting at the initial point
};

struct OptimizeResult {
  Field field = Field::Complex;
  StrategyDims dims;
  double best_value = 0.0;
  std::size_t best_restart = 0;
  StrategyMatrices best;
  std::vector<RestartResult> restarts;
};

/// One see-saw run from `start`: sweeps with Bob's labels frozen until the
/// gain drops below `tol`, then free sweeps until it does again. Each phase
/// gets up to `max_iters` sweeps.
RestartResult seesaw(StrategyMatrices& start, const SignTable& signs, int max_iters,
                     double tol);

OptimizeResult optimize(const OptimizerConfig& cfg, Field field, const StrategyDims& dims,
                        const SignTable& signs);

Json optimize_json(const OptimizeResult& r, bool include_traces = false);

}  // namespace swapgame
