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

#include "swapgame/seesaw.hpp"

namespace swapgame {
namespace {

const SignTable& signs() {
  static const SignTable t = derive_sign_table(build_settings());
  return t;
}

double trace_product(const Matrix& a, const Matrix& b) { return (a * b).trace().real(); }

TEST(Strategy, IdealReachesTheQuantumMaximum) {
  const StrategyMatrices s = ideal_strategy();
  EXPECT_NEAR(game_value(s, signs()), kQuantumMax, 1e-9);
  EXPECT_NEAR(independent_value(to_strategy(s), signs()), kQuantumMax, 1e-9);
}

TEST(Strategy, RandomStrategiesAreValid) {
  for (Field f : {Field::Complex, Field::Real}) {
    const StrategyMatrices s = random_strategy(f, {2, 3, 2, 3}, 7, 0);
    const Strategy st = to_strategy(s);
    EXPECT_EQ(st.bob.size(), 4u);
    for (const Observable& a : st.alice) EXPECT_TRUE(a.is_dichotomic());
    if (f == Field::Real) EXPECT_LT(s.max_imaginary(), 1e-12);
  }
  const auto a = random_strategy(Field::Complex, {2, 2, 2, 2}, 7, 0);
  const auto b = random_strategy(Field::Complex, {2, 2, 2, 2}, 7, 0);
  const auto c = random_strategy(Field::Complex, {2, 2, 2, 2}, 7, 1);
  EXPECT_TRUE(a.rho1.isApprox(b.rho1));
  EXPECT_FALSE(a.rho1.isApprox(c.rho1));
}

// The value is linear in each block, and every block operator must reproduce
// it when contracted with the block it multiplies.
TEST(Operators, EveryBlockReproducesTheValue) {
  for (std::uint64_t stream = 0; stream < 10; ++stream) {
    const StrategyDims dims = stream % 2 ? StrategyDims{2, 2, 2, 2} : StrategyDims{2, 3, 2, 3};
    const Field field = stream % 3 ? Field::Complex : Field::Real;
    const StrategyMatrices s = random_strategy(field, dims, 99, stream);
    const double value = independent_value(to_strategy(s), signs());
    EXPECT_NEAR(game_value(s, signs()), value, 1e-10);

    EXPECT_NEAR(bob_objective(s.bob, bob_operators(s, signs())), value, 1e-10);
    const auto a_ops = alice_operators(s, signs());
    double via_alice = 0.0;
    for (int x = 0; x < kAliceSettings; ++x) via_alice += trace_product(a_ops[x], s.alice[x]);
    EXPECT_NEAR(via_alice, value, 1e-10);
    const auto c_ops = claire_operators(s, signs());
    double via_claire = 0.0;
    for (int z = 0; z < kClaireSettings; ++z) via_claire += trace_product(c_ops[z], s.claire[z]);
    EXPECT_NEAR(via_claire, value, 1e-10);
    EXPECT_NEAR(trace_product(source1_operator(s, signs()), s.rho1), value, 1e-10);
    EXPECT_NEAR(trace_product(source2_operator(s, signs()), s.rho2), value, 1e-10);
  }
}

TEST(Updates, ObservableIsTheSignOfItsOperator) {
  EXPECT_TRUE(update_observable(pauli_matrix(Pauli::Z)).isApprox(pauli_matrix(Pauli::Z), 1e-12));
  EXPECT_TRUE(update_observable(0.3 * pauli_matrix(Pauli::X)).isApprox(pauli_matrix(Pauli::X), 1e-12));
  EXPECT_TRUE(update_observable(-2.0 * pauli_matrix(Pauli::Y)).isApprox(-pauli_matrix(Pauli::Y), 1e-12));
  // The optimum beats any other dichotomic choice.
  const Matrix op = pauli_matrix(Pauli::X) + 0.5 * pauli_matrix(Pauli::Z);
  const double best = trace_product(op, update_observable(op));
  EXPECT_NEAR(best, 2.0 * std::sqrt(1.25), 1e-12);
  EXPECT_GE(best, trace_product(op, pauli_matrix(Pauli::X)));
  EXPECT_GE(best, trace_product(op, pauli_matrix(Pauli::Z)));
}

TEST(Updates, StateIsTheTopEigenvector) {
  const Observable xx = tensor(pauli(Pauli::X), pauli(Pauli::X));
  const Observable zz = tensor(pauli(Pauli::Z), pauli(Pauli::Z));
  const Matrix w = xx.matrix() + zz.matrix();
  const Matrix rho = update_state(w);
  EXPECT_TRUE(rho.isApprox(bell_state(BellOutcome::PhiPlus).matrix(), 1e-10));
  EXPECT_NEAR(trace_product(w, rho), 2.0, 1e-12);
}

TEST(Updates, BobFixedPointOnTheIdealStrategy) {
  const StrategyMatrices s = ideal_strategy();
  const auto ops = bob_operators(s, signs());
  const BobBasis b = update_bob_basis(ops, Field::Complex);
  EXPECT_NEAR(bob_objective(b, ops), kQuantumMax, 1e-9);
  const auto proj = b.projectors();
  for (BellOutcome o : kBellOutcomes) {
    const Matrix bell = bell_state(o).matrix();
    EXPECT_TRUE(proj[index_of(o)].isApprox(bell, 1e-8)) << to_string(o);
  }
  const ProjectiveMeasurement m = update_bob(ops);
  EXPECT_EQ(m.size(), 4u);
}

TEST(Updates, EqualOperatorsBreakTiesByIndex) {
  std::array<Matrix, 4> ops;
  ops.fill(Matrix::Identity(4, 4));
  const BobBasis b = update_bob_basis(ops, Field::Complex);
  EXPECT_TRUE(b.basis.isApprox(Matrix::Identity(4, 4)));
  EXPECT_EQ(b.labels, (std::vector<int>{0, 1, 2, 3}));
}

TEST(Updates, RotationKeepsLabels) {
  const StrategyMatrices s = random_strategy(Field::Complex, {2, 2, 2, 2}, 3, 0);
  const auto ops = bob_operators(s, signs());
  const BobBasis r = rotate_bob_basis(ops, Field::Complex, s.bob);
  EXPECT_EQ(r.labels, s.bob.labels);
  EXPECT_GE(bob_objective(r, ops), bob_objective(s.bob, ops) - 1e-12);
  EXPECT_TRUE((r.basis.adjoint() * r.basis).isApprox(Matrix::Identity(4, 4), 1e-10));
}

TEST(Seesaw, TracesNeverDecrease) {
  for (std::uint64_t stream = 0; stream < 6; ++stream) {
    StrategyMatrices s = random_strategy(Field::Complex, {2, 2, 2, 2}, 11, stream);
    const RestartResult r = seesaw(s, signs(), 200, 1e-10);
    ASSERT_GE(r.trace.size(), 2u);
    for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_GE(r.trace[i], r.trace[i - 1] - 1e-12);
    EXPECT_NEAR(r.value, game_value(s, signs()), 1e-9);
    EXPECT_NEAR(r.value, independent_value(to_strategy(s), signs()), 1e-9);
    EXPECT_LE(r.value, kQuantumMax + 1e-9);
  }
}

TEST(Optimize, ComplexFindsTheQuantumMaximum) {
  OptimizerConfig cfg;
  cfg.restarts = 20;
  cfg.seed = 1;
  const OptimizeResult r = optimize(cfg, Field::Complex, {2, 2, 2, 2}, signs());
  EXPECT_GE(r.best_value, 8.4852);
  EXPECT_LE(r.best_value, kQuantumMax + 1e-9);
  EXPECT_EQ(r.restarts.size(), 20u);
  EXPECT_NEAR(r.restarts[r.best_restart].value, r.best_value, 1e-12);
  EXPECT_NEAR(independent_value(to_strategy(r.best), signs()), r.best_value, 1e-9);
}

TEST(Optimize, RealStaysBelowTheRealBound) {
  OptimizerConfig cfg;
  cfg.restarts = 20;
  cfg.seed = 2;
  for (StrategyDims dims : {StrategyDims{2, 2, 2, 2}, StrategyDims{3, 3, 3, 3}}) {
    const OptimizeResult r = optimize(cfg, Field::Real, dims, signs());
    EXPECT_GE(r.best_value, kClassicalBound - 1e-9);
    EXPECT_LE(r.best_value, kRealBoundCeiling);
    EXPECT_LT(r.best.max_imaginary(), 1e-12);
  }
}

TEST(Optimize, TrivialDimensionsAreClassical) {
  OptimizerConfig cfg;
  cfg.restarts = 10;
  const OptimizeResult r = optimize(cfg, Field::Complex, {1, 1, 1, 1}, signs());
  EXPECT_LE(r.best_value, kClassicalBound + 1e-9);
}

TEST(Optimize, ThreadCountDoesNotChangeResults) {
  OptimizerConfig cfg;
  cfg.restarts = 6;
  cfg.seed = 5;
  cfg.threads = 1;
  const OptimizeResult one = optimize(cfg, Field::Complex, {2, 2, 2, 2}, signs());
  cfg.threads = 3;
  const OptimizeResult three = optimize(cfg, Field::Complex, {2, 2, 2, 2}, signs());
  ASSERT_EQ(one.restarts.size(), three.restarts.size());
  for (std::size_t i = 0; i < one.restarts.size(); ++i) {
    EXPECT_EQ(one.restarts[i].value, three.restarts[i].value);
    EXPECT_EQ(one.restarts[i].trace, three.restarts[i].trace);
  }
  EXPECT_EQ(optimize_json(one).dump(), optimize_json(three).dump());
}

TEST(Optimize, RejectsBadConfig) {
  OptimizerConfig cfg;
  cfg.restarts = 0;
  EXPECT_THROW(optimize(cfg, Field::Complex, {2, 2, 2, 2}, signs()), InvalidInput);
}

TEST(Parse, DimsAndField) {
  EXPECT_EQ(parse_dims("2,2,2,2"), (StrategyDims{2, 2, 2, 2}));
  EXPECT_EQ(parse_dims("4,2,2,4"), (StrategyDims{4, 2, 2, 4}));
  EXPECT_THROW(parse_dims("2,2,2"), InvalidInput);
  EXPECT_THROW(parse_dims("2,0,2,2"), InvalidInput);
  EXPECT_EQ(parse_field("real"), Field::Real);
  EXPECT_EQ(parse_field("complex"), Field::Complex);
  EXPECT_THROW(parse_field("quaternion"), InvalidInput);
}

}  // namespace
}  // namespace swapgame
