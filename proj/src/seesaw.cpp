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

#include "swapgame/seesaw.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "swapgame/config.hpp"
#include "swapgame/rng.hpp"

namespace swapgame {

std::string_view to_string(Field f) { return f == Field::Complex ? "complex" : "real"; }

Field parse_field(std::string_view text) {
  std::string t;
  for (char ch : text) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (t == "complex") return Field::Complex;
  if (t == "real") return Field::Real;
  throw InvalidInput("unknown field '" + std::string(text) + "' (use complex or real)");
}

StrategyDims parse_dims(std::string_view text) {
  std::string t(text);
  std::replace(t.begin(), t.end(), 'x', ',');
  const auto parts = split(t, ',');
  if (parts.size() != 4) {
    throw InvalidInput("dims need four values (alice, bob_left, bob_right, claire), got '" +
                       std::string(text) + "'");
  }
  std::array<int, 4> d{};
  for (int i = 0; i < 4; ++i) {
    try {
      d[i] = static_cast<int>(parse_integer(parts[i], 0));
    } catch (const ConfigError&) {
      throw InvalidInput("dims entry '" + parts[i] + "' is not an integer");
    }
    if (d[i] < 1 || d[i] > 8) throw InvalidInput("dims entries must lie in 1..8");
  }
  if (d[0] * d[1] > 16 || d[2] * d[3] > 16) {
    throw InvalidInput("each source may span at most 16 dimensions");
  }
  return StrategyDims{d[0], d[1], d[2], d[3]};
}

std::array<Matrix, 4> BobBasis::projectors() const {
  const Eigen::Index d = basis.rows();
  std::array<Matrix, 4> p;
  for (auto& m : p) m = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < basis.cols(); ++i) {
    p[labels[i]] += basis.col(i) * basis.col(i).adjoint();
  }
  return p;
}

double StrategyMatrices::max_imaginary() const {
  double m = std::max(rho1.imag().cwiseAbs().maxCoeff(), rho2.imag().cwiseAbs().maxCoeff());
  for (const Matrix& a : alice) m = std::max(m, a.imag().cwiseAbs().maxCoeff());
  for (const Matrix& c : claire) m = std::max(m, c.imag().cwiseAbs().maxCoeff());
  return std::max(m, bob.basis.imag().cwiseAbs().maxCoeff());
}

Strategy to_strategy(const StrategyMatrices& m) {
  std::vector<Observable> alice;
  for (const Matrix& a : m.alice) alice.push_back(Observable::dichotomic(a));
  std::vector<Observable> claire;
  for (const Matrix& c : m.claire) claire.push_back(Observable::dichotomic(c));
  const auto proj = m.bob.projectors();
  std::vector<std::string> labels;
  for (BellOutcome b : kBellOutcomes) labels.emplace_back(to_string(b));
  return Strategy{m.field,
                  m.dims,
                  QuantumState(m.rho1),
                  QuantumState(m.rho2),
                  std::move(alice),
                  std::move(claire),
                  ProjectiveMeasurement(labels, {proj.begin(), proj.end()})};
}

StrategyMatrices ideal_strategy() {
  const SettingsSpec settings = build_settings();
  StrategyMatrices s;
  s.field = Field::Complex;
  s.rho1 = bell_state(BellOutcome::PhiPlus).matrix();
  s.rho2 = s.rho1;
  for (int x = 0; x < kAliceSettings; ++x) s.alice[x] = settings.alice[x].matrix();
  for (int z = 0; z < kClaireSettings; ++z) s.claire[z] = settings.claire[z].matrix();
  s.bob.basis = Matrix(4, 4);
  for (int b = 0; b < 4; ++b) {
    s.bob.basis.col(b) = bell_vector(static_cast<BellOutcome>(b));
    s.bob.labels.push_back(b);
  }
  return s;
}

namespace {

Vector gaussian_vector(int d, Field field, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vector v(d);
  for (int i = 0; i < d; ++i) {
    const double re = n(rng);
    const double im = field == Field::Complex ? n(rng) : 0.0;
    v[i] = Complex(re, im);
  }
  return v;
}

// Haar-distributed unitary (orthogonal in real mode): QR of a Gaussian
// matrix with the phases of R's diagonal moved into Q.
Matrix haar_unitary(int d, Field field, Rng& rng) {
  Matrix g(d, d);
  for (int c = 0; c < d; ++c) g.col(c) = gaussian_vector(d, field, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < d; ++c) {
    const double mag = std::abs(r(c, c));
    if (mag > 0.0) q.col(c) *= r(c, c) / mag;
  }
  if (field == Field::Real) q = q.real().cast<Complex>();
  return q;
}

Matrix random_pure_state(int d, Field field, Rng& rng) {
  Vector v = gaussian_vector(d, field, rng);
  v /= v.norm();
  return v * v.adjoint();
}

Matrix random_dichotomic(int d, Field field, Rng& rng) {
  const Matrix u = haar_unitary(d, field, rng);
  Eigen::VectorXd s(d);
  for (int i = 0; i < d; ++i) s[i] = (rng() & 1u) ? 1.0 : -1.0;
  return u * s.cast<Complex>().asDiagonal() * u.adjoint();
}

// Contraction over the first factor of a (d1 x d2) operator:
// out = tr_1[(a (x) I) rho], out(k, l) = sum_ij a(j, i) rho(i d2 + k, j d2 + l).
Matrix contract_first(const Matrix& a, const Matrix& rho, int d1, int d2) {
  Matrix out = Matrix::Zero(d2, d2);
  for (int i = 0; i < d1; ++i) {
    for (int j = 0; j < d1; ++j) {
      const Complex w = a(j, i);
      if (w == Complex(0.0, 0.0)) continue;
      out += w * rho.block(i * d2, j * d2, d2, d2);
    }
  }
  return out;
}

// Contraction over the second factor:
// out = tr_2[(I (x) c) rho], out(k, l) = sum_ij c(j, i) rho(k d2 + i, l d2 + j).
Matrix contract_second(const Matrix& c, const Matrix& rho, int d1, int d2) {
  Matrix out = Matrix::Zero(d1, d1);
  for (int k = 0; k < d1; ++k) {
    for (int l = 0; l < d1; ++l) {
      out(k, l) = (c.transpose().cwiseProduct(rho.block(k * d2, l * d2, d2, d2))).sum();
    }
  }
  return out;
}

struct Marginals {
  std::array<Matrix, kAliceSettings> tau1;   // on bob_left
  std::array<Matrix, kClaireSettings> tau2;  // on bob_right
};

Marginals marginals(const StrategyMatrices& s) {
  Marginals m;
  for (int x = 0; x < kAliceSettings; ++x) {
    m.tau1[x] = contract_first(s.alice[x], s.rho1, s.dims.alice, s.dims.bob_left);
  }
  for (int z = 0; z < kClaireSettings; ++z) {
    m.tau2[z] = contract_second(s.claire[z], s.rho2, s.dims.bob_right, s.dims.claire);
  }
  return m;
}

Matrix real_if(const Matrix& m, Field field) {
  return field == Field::Real ? Matrix(m.real().cast<Complex>()) : m;
}

void check_signs(const SignTable& signs) {
  for (const SettingCombo& c : signs.combos()) {
    if (c.x < 1 || c.x > kAliceSettings || c.z < 1 || c.z > kClaireSettings) {
      throw InvalidInput("sign table combo out of range");
    }
  }
}

}  // namespace

StrategyMatrices random_strategy(Field field, const StrategyDims& dims, std::uint64_t seed,
                                 std::uint64_t stream) {
  Rng rng = make_rng(seed, stream);
  StrategyMatrices s;
  s.field = field;
  s.dims = dims;
  s.rho1 = random_pure_state(dims.alice * dims.bob_left, field, rng);
  s.rho2 = random_pure_state(dims.bob_right * dims.claire, field, rng);
  for (auto& a : s.alice) a = random_dichotomic(dims.alice, field, rng);
  for (auto& c : s.claire) c = random_dichotomic(dims.claire, field, rng);
  const int d = dims.bob_left * dims.bob_right;
  s.bob.basis = haar_unitary(d, field, rng);
  s.bob.labels.resize(d);
  // Balanced labels; the basis itself is random, so which vector gets which
  // outcome does not matter.
  for (int i = 0; i < d; ++i) s.bob.labels[i] = d >= 4 ? i * 4 / d : i;
  return s;
}

std::array<Matrix, 4> bob_operators(const StrategyMatrices& s, const SignTable& signs) {
  check_signs(signs);
  const Marginals m = marginals(s);
  const int d = s.dims.bob_left * s.dims.bob_right;
  std::array<Matrix, 4> ops;
  const auto& combos = signs.combos();
  // Each combo contributes the same product to all four outcomes, up to sign.
  std::vector<Matrix> products;
  products.reserve(combos.size());
  for (const SettingCombo& c : combos) products.push_back(kron(m.tau1[c.x - 1], m.tau2[c.z - 1]));
  for (int b = 0; b < 4; ++b) {
    ops[b] = Matrix::Zero(d, d);
    for (std::size_t k = 0; k < combos.size(); ++k) ops[b] += signs.sign(b, k) * products[k];
    ops[b] = hermitian_part(ops[b]);
  }
  return ops;
}

namespace {

// S_x = sum_{b, k : x_k = x} sign * tr_B2[P_b (I (x) tau2_{z_k})], on bob_left.
std::array<Matrix, kAliceSettings> alice_side(const StrategyMatrices& s, const SignTable& signs,
                                              const std::array<Matrix, 4>& proj,
                                              const Marginals& m) {
  std::array<Matrix, kAliceSettings> out;
  for (auto& o : out) o = Matrix::Zero(s.dims.bob_left, s.dims.bob_left);
  const auto& combos = signs.combos();
  for (int b = 0; b < 4; ++b) {
    std::array<Matrix, kClaireSettings> q;
    for (int z = 0; z < kClaireSettings; ++z) {
      q[z] = contract_second(m.tau2[z], proj[b], s.dims.bob_left, s.dims.bob_right);
    }
    for (std::size_t k = 0; k < combos.size(); ++k) {
      out[combos[k].x - 1] += signs.sign(b, k) * q[combos[k].z - 1];
    }
  }
  return out;
}

// T_z = sum_{b, k : z_k = z} sign * tr_B1[P_b (tau1_{x_k} (x) I)], on bob_right.
std::array<Matrix, kClaireSettings> claire_side(const StrategyMatrices& s, const SignTable& signs,
                                                const std::array<Matrix, 4>& proj,
                                                const Marginals& m) {
  std::array<Matrix, kClaireSettings> out;
  for (auto& o : out) o = Matrix::Zero(s.dims.bob_right, s.dims.bob_right);
  const auto& combos = signs.combos();
  for (int b = 0; b < 4; ++b) {
    std::array<Matrix, kAliceSettings> q;
    for (int x = 0; x < kAliceSettings; ++x) {
      q[x] = contract_first(m.tau1[x], proj[b], s.dims.bob_left, s.dims.bob_right);
    }
    for (std::size_t k = 0; k < combos.size(); ++k) {
      out[combos[k].z - 1] += signs.sign(b, k) * q[combos[k].x - 1];
    }
  }
  return out;
}

}  // namespace

std::array<Matrix, kAliceSettings> alice_operators(const StrategyMatrices& s,
                                                   const SignTable& signs) {
  check_signs(signs);
  const auto side = alice_side(s, signs, s.bob.projectors(), marginals(s));
  std::array<Matrix, kAliceSettings> ops;
  for (int x = 0; x < kAliceSettings; ++x) {
    ops[x] = hermitian_part(contract_second(side[x], s.rho1, s.dims.alice, s.dims.bob_left));
  }
  return ops;
}

std::array<Matrix, kClaireSettings> claire_operators(const StrategyMatrices& s,
                                                     const SignTable& signs) {
  check_signs(signs);
  const auto side = claire_side(s, signs, s.bob.projectors(), marginals(s));
  std::array<Matrix, kClaireSettings> ops;
  for (int z = 0; z < kClaireSettings; ++z) {
    ops[z] = hermitian_part(contract_first(side[z], s.rho2, s.dims.bob_right, s.dims.claire));
  }
  return ops;
}

Matrix source1_operator(const StrategyMatrices& s, const SignTable& signs) {
  check_signs(signs);
  const auto side = alice_side(s, signs, s.bob.projectors(), marginals(s));
  const int d = s.dims.alice * s.dims.bob_left;
  Matrix w = Matrix::Zero(d, d);
  for (int x = 0; x < kAliceSettings; ++x) w += kron(s.alice[x], side[x]);
  return hermitian_part(w);
}

Matrix source2_operator(const StrategyMatrices& s, const SignTable& signs) {
  check_signs(signs);
  const auto side = claire_side(s, signs, s.bob.projectors(), marginals(s));
  const int d = s.dims.bob_right * s.dims.claire;
  Matrix w = Matrix::Zero(d, d);
  for (int z = 0; z < kClaireSettings; ++z) w += kron(side[z], s.claire[z]);
  return hermitian_part(w);
}

double game_value(const StrategyMatrices& s, const SignTable& signs) {
  return bob_objective(s.bob, bob_operators(s, signs));
}

double independent_value(const Strategy& s, const SignTable& signs) {
  const NetworkDims dims{s.dims.alice, s.dims.bob_left, s.dims.bob_right, s.dims.claire};
  const ProbabilityMatrix pm =
      probability_matrix(s.rho1, s.rho2, s.alice, s.claire, s.bob, signs.combos(), dims);
  return score(pm, signs).total;
}

Matrix update_observable(const Matrix& op, Field field) {
  const EigenSystem es = eigh(real_if(op, field), field == Field::Real);
  const Eigen::Index d = es.values.size();
  Eigen::VectorXd s(d);
  for (Eigen::Index i = 0; i < d; ++i) s[i] = es.values[i] < -1e-12 ? -1.0 : 1.0;
  return hermitian_part(es.vectors * s.cast<Complex>().asDiagonal() * es.vectors.adjoint());
}

Matrix update_state(const Matrix& op, Field field) {
  const EigenSystem es = eigh(real_if(op, field), field == Field::Real);
  const Vector v = es.vectors.col(es.values.size() - 1);
  return hermitian_part(v * v.adjoint());
}

double bob_objective(const BobBasis& bob, const std::array<Matrix, 4>& ops) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < bob.basis.cols(); ++i) {
    const Vector u = bob.basis.col(i);
    total += (u.adjoint() * ops[bob.labels[i]] * u)(0, 0).real();
  }
  return total;
}

namespace {

double quadratic(const Vector& u, const Matrix& m) { return (u.adjoint() * m * u)(0, 0).real(); }

BobBasis greedy_bob(const std::array<Matrix, 4>& ops, Field field) {
  const Eigen::Index d = ops[0].rows();
  BobBasis out;
  out.basis = Matrix(d, d);
  out.labels.assign(d, 0);
  Matrix remaining = Matrix::Identity(d, d);
  for (Eigen::Index step = 0; step < d; ++step) {
    int best_b = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    Vector best_w;
    for (int b = 0; b < 4; ++b) {
      const EigenSystem es = eigh(remaining.adjoint() * ops[b] * remaining, field == Field::Real);
      const double top = es.values[es.values.size() - 1];
      if (top > best_val + 1e-13) {
        best_val = top;
        best_b = b;
        best_w = es.vectors.col(es.values.size() - 1);
      }
    }
    out.basis.col(step) = remaining * best_w;
    out.labels[step] = best_b;
    const Eigen::Index r = remaining.cols();
    if (r > 1) {
      const Matrix complement =
          Matrix::Identity(r, r) - best_w * best_w.adjoint();
      const EigenSystem es = eigh(complement, field == Field::Real);
      // Eigenvalue 0 belongs to best_w; the rest span its complement.
      remaining = remaining * es.vectors.rightCols(r - 1);
    }
  }
  return out;
}

void reassign(BobBasis& bob, const std::array<Matrix, 4>& ops) {
  for (Eigen::Index i = 0; i < bob.basis.cols(); ++i) {
    const Vector u = bob.basis.col(i);
    int best = bob.labels[i];
    double best_val = quadratic(u, ops[best]);
    for (int b = 0; b < 4; ++b) {
      const double v = quadratic(u, ops[b]);
      if (v > best_val + 1e-13) {
        best_val = v;
        best = b;
      }
    }
    bob.labels[i] = best;
  }
}

// Pairwise rotations: for two vectors with different outcomes the plane they
// span is re-split optimally, a 2 x 2 eigenproblem.
void refine_bob(BobBasis& bob, const std::array<Matrix, 4>& ops, Field field,
                bool relabel = true) {
  const Eigen::Index d = bob.basis.cols();
  double value = bob_objective(bob, ops);
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (relabel) reassign(bob, ops);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = i + 1; j < d; ++j) {
        if (bob.labels[i] == bob.labels[j]) continue;
        Matrix v(d, 2);
        v.col(0) = bob.basis.col(i);
        v.col(1) = bob.basis.col(j);
        const Matrix h = v.adjoint() * (ops[bob.labels[i]] - ops[bob.labels[j]]) * v;
        const EigenSystem es = eigh(h, field == Field::Real);
        const Vector ui = v * es.vectors.col(1);
        const Vector uj = v * es.vectors.col(0);
        const double before = quadratic(v.col(0), ops[bob.labels[i]]) +
                              quadratic(v.col(1), ops[bob.labels[j]]);
        const double after = quadratic(ui, ops[bob.labels[i]]) + quadratic(uj, ops[bob.labels[j]]);
        if (after > before) {
          bob.basis.col(i) = ui;
          bob.basis.col(j) = uj;
        }
      }
    }
    if (relabel) reassign(bob, ops);
    const double next = bob_objective(bob, ops);
    const double gain = next - value;
    value = next;
    if (gain <= 1e-14 * std::max(1.0, std::abs(value))) break;
  }
}

bool all_equal(const std::array<Matrix, 4>& ops) {
  for (int b = 1; b < 4; ++b) {
    if ((ops[b] - ops[0]).cwiseAbs().maxCoeff() > 1e-12) return false;
  }
  return true;
}

}  // namespace

BobBasis update_bob_basis(const std::array<Matrix, 4>& ops, Field field,
                          const BobBasis* current) {
  const Eigen::Index d = ops[0].rows();
  std::array<Matrix, 4> h;
  for (int b = 0; b < 4; ++b) h[b] = hermitian_part(real_if(ops[b], field));

  if (all_equal(h)) {
    BobBasis out;
    out.basis = Matrix::Identity(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      out.labels.push_back(d >= 4 ? static_cast<int>(i * 4 / d) : static_cast<int>(i));
    }
    return out;
  }

  BobBasis best = greedy_bob(h, field);
  refine_bob(best, h, field);
  if (current != nullptr) {
    BobBasis refined = *current;
    refine_bob(refined, h, field);
    const double current_value = bob_objective(*current, h);
    if (bob_objective(refined, h) < current_value) refined = *current;
    if (bob_objective(refined, h) > bob_objective(best, h)) best = std::move(refined);
  }
  if (field == Field::Real) best.basis = best.basis.real().cast<Complex>();
  return best;
}

BobBasis rotate_bob_basis(const std::array<Matrix, 4>& ops, Field field, const BobBasis& current) {
  std::array<Matrix, 4> h;
  for (int b = 0; b < 4; ++b) h[b] = hermitian_part(real_if(ops[b], field));
  BobBasis out = current;
  refine_bob(out, h, field, false);
  if (bob_objective(out, h) < bob_objective(current, h)) out = current;
  if (field == Field::Real) out.basis = out.basis.real().cast<Complex>();
  return out;
}

ProjectiveMeasurement update_bob(const std::array<Matrix, 4>& ops, Field field) {
  const auto proj = update_bob_basis(ops, field).projectors();
  std::vector<std::string> labels;
  for (BellOutcome b : kBellOutcomes) labels.emplace_back(to_string(b));
  return ProjectiveMeasurement(labels, {proj.begin(), proj.end()});
}

void OptimizerConfig::validate() const {
  if (restarts < 1) throw InvalidInput("optimizer: restarts must be >= 1");
  if (max_iters < 1) throw InvalidInput("optimizer: max_iters must be >= 1");
  if (!(tol > 0.0)) throw InvalidInput("optimizer: tol must be positive");
}

RestartResult seesaw(StrategyMatrices& s, const SignTable& signs, int max_iters, double tol) {
  RestartResult out;
  double value = game_value(s, signs);
  out.trace.push_back(value);

  // Applies one update; rolls it back if the value dropped.
  auto guarded = [&](auto&& apply) {
    StrategyMatrices saved = s;
    apply();
    const double next = game_value(s, signs);
    if (next < value - 1e-12) {
      s = std::move(saved);
      ++out.reverted_steps;
    } else {
      value = next;
    }
  };

  const Field f = s.field;
  // Phase 0 keeps Bob's outcome labels and only rotates his basis; phase 1
  // frees them. Starting free lets one outcome absorb the whole basis, which
  // traps most runs at the deterministic value.
  for (int phase = 0; phase < 2; ++phase) {
    for (int it = 0; it < max_iters; ++it) {
      const double start = value;
      guarded([&] {
        const auto ops = alice_operators(s, signs);
        for (int x = 0; x < kAliceSettings; ++x) s.alice[x] = update_observable(ops[x], f);
      });
      guarded([&] {
        const auto ops = claire_operators(s, signs);
        for (int z = 0; z < kClaireSettings; ++z) s.claire[z] = update_observable(ops[z], f);
      });
      guarded([&] { s.rho1 = update_state(source1_operator(s, signs), f); });
      guarded([&] { s.rho2 = update_state(source2_operator(s, signs), f); });
      guarded([&] {
        const auto ops = bob_operators(s, signs);
        s.bob = phase == 0 ? rotate_bob_basis(ops, f, s.bob) : update_bob_basis(ops, f, &s.bob);
      });
      out.trace.push_back(value);
      ++out.iterations;
      if (phase == 0) ++out.fixed_label_iterations;
      if (value - start < tol) {
        if (phase == 1) out.converged = true;
        break;
      }
    }
  }
  out.value = value;
  return out;
}

OptimizeResult optimize(const OptimizerConfig& cfg, Field field, const StrategyDims& dims,
                        const SignTable& signs) {
  cfg.validate();
  check_signs(signs);
  std::vector<StrategyMatrices> finals(static_cast<std::size_t>(cfg.restarts));
  std::vector<RestartResult> results(finals.size());
  parallel_for(finals.size(), cfg.threads, [&](std::size_t r) {
    finals[r] = random_strategy(field, dims, cfg.seed, r);
    results[r] = seesaw(finals[r], signs, cfg.max_iters, cfg.tol);
  });
  OptimizeResult out;
  out.field = field;
  out.dims = dims;
  out.best_value = results[0].value;
  for (std::size_t r = 1; r < results.size(); ++r) {
    if (results[r].value > out.best_value) {
      out.best_value = results[r].value;
      out.best_restart = r;
    }
  }
  out.best = finals[out.best_restart];
  out.restarts = std::move(results);
  return out;
}

Json optimize_json(const OptimizeResult& r, bool include_traces) {
  Json restarts = Json::array();
  for (const RestartResult& rr : r.restarts) {
    Json j{{"value", json_number(rr.value)},
           {"iterations", rr.iterations},
           {"fixed_label_iterations", rr.fixed_label_iterations},
           {"converged", rr.converged},
           {"reverted_steps", rr.reverted_steps}};
    if (include_traces) {
      Json t = Json::array();
      for (double v : rr.trace) t.push_back(json_number(v));
      j["trace"] = std::move(t);
    }
    restarts.push_back(std::move(j));
  }
  Json alice = Json::array();
  for (const Matrix& a : r.best.alice) alice.push_back(matrix_json(a));
  Json claire = Json::array();
  for (const Matrix& c : r.best.claire) claire.push_back(matrix_json(c));
  Json bob = Json::array();
  for (const Matrix& p : r.best.bob.projectors()) bob.push_back(matrix_json(p));
  return Json{{"field", std::string(to_string(r.field))},
              {"dims", {r.dims.alice, r.dims.bob_left, r.dims.bob_right, r.dims.claire}},
              {"best_value", json_number(r.best_value)},
              {"best_restart", r.best_restart},
              {"restarts", std::move(restarts)},
              {"strategy",
               {{"rho1", matrix_json(r.best.rho1)},
                {"rho2", matrix_json(r.best.rho2)},
                {"alice", std::move(alice)},
                {"claire", std::move(claire)},
                {"bob", std::move(bob)}}}};
}

}  // namespace swapgame
