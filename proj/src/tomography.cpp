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

#include "swapgame/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "swapgame/config.hpp"
#include "swapgame/rng.hpp"

namespace swapgame {

namespace {

char label(Pauli p) {
  switch (p) {
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
    case Pauli::I: break;
  }
  return 'I';
}

std::string basis_name(const BasisPair& b) { return std::string{label(b.first), label(b.second)}; }

int sign_first(int k) { return k < 2 ? 1 : -1; }
int sign_second(int k) { return k % 2 == 0 ? 1 : -1; }

struct BasisProjectors {
  BasisPair basis;
  std::array<Matrix, 4> proj;
};

const std::vector<BasisProjectors>& all_projectors() {
  static const std::vector<BasisProjectors> table = [] {
    std::vector<BasisProjectors> t;
    for (Pauli p : kMeasuredPaulis) {
      for (Pauli q : kMeasuredPaulis) {
        BasisProjectors b{{p, q}, {}};
        for (int k = 0; k < 4; ++k) b.proj[k] = outcome_projector(b.basis, k);
        t.push_back(std::move(b));
      }
    }
    return t;
  }();
  return table;
}

std::array<double, 4> probabilities(const Matrix& rho, const BasisProjectors& b) {
  std::array<double, 4> p{};
  for (int k = 0; k < 4; ++k) p[k] = std::max(0.0, (rho * b.proj[k]).trace().real());
  return p;
}

}  // namespace

void CountsByBasis::require_complete() const {
  for (Pauli p : kMeasuredPaulis) {
    for (Pauli q : kMeasuredPaulis) {
      const auto it = counts.find({p, q});
      if (it == counts.end()) throw InvalidInput("missing basis " + basis_name({p, q}));
      double n = 0.0;
      for (double c : it->second) {
        if (!(c >= 0.0)) throw InvalidInput("negative count in basis " + basis_name({p, q}));
        n += c;
      }
      if (!(n > 0.0)) throw InvalidInput("no counts in basis " + basis_name({p, q}));
    }
  }
}

double CountsByBasis::total() const {
  double n = 0.0;
  for (const auto& [b, c] : counts) n += c[0] + c[1] + c[2] + c[3];
  return n;
}

Matrix outcome_projector(const BasisPair& basis, int k) {
  if (k < 0 || k > 3) throw InvalidInput("outcome index must be 0..3");
  const Matrix id = Matrix::Identity(2, 2);
  const Matrix a = (id + sign_first(k) * pauli_matrix(basis.first)) / 2.0;
  const Matrix b = (id + sign_second(k) * pauli_matrix(basis.second)) / 2.0;
  return kron(a, b);
}

CountsByBasis expected_counts(const QuantumState& rho, double n_per_basis) {
  if (rho.dim() != 4) throw InvalidInput("tomography needs a two-qubit state");
  if (!(n_per_basis >= 0.0)) throw InvalidInput("n per basis must be non-negative");
  CountsByBasis out;
  for (const BasisProjectors& b : all_projectors()) {
    const auto p = probabilities(rho.matrix(), b);
    OutcomeCounts c{};
    for (int k = 0; k < 4; ++k) c[k] = n_per_basis * p[k];
    out.counts[b.basis] = c;
  }
  return out;
}

CountsByBasis simulate_counts(const QuantumState& rho, long long n_per_basis, std::uint64_t seed) {
  if (rho.dim() != 4) throw InvalidInput("tomography needs a two-qubit state");
  if (n_per_basis < 0) throw InvalidInput("n per basis must be non-negative");
  CountsByBasis out;
  std::uint64_t stream = 0;
  for (const BasisProjectors& b : all_projectors()) {
    Rng rng = make_rng(seed, stream++);
    const auto p = probabilities(rho.matrix(), b);
    // Multinomial as a chain of conditional binomials.
    OutcomeCounts c{};
    long long left = n_per_basis;
    double mass = p[0] + p[1] + p[2] + p[3];
    for (int k = 0; k < 3; ++k) {
      const double q = mass > 0.0 ? std::clamp(p[k] / mass, 0.0, 1.0) : 0.0;
      std::binomial_distribution<long long> draw(left, q);
      const long long n = left > 0 ? draw(rng) : 0;
      c[k] = static_cast<double>(n);
      left -= n;
      mass -= p[k];
    }
    c[3] = static_cast<double>(left);
    out.counts[b.basis] = c;
  }
  return out;
}

QuantumState ReconstructedState::state() const { return QuantumState(rho); }

ReconstructedState linear_inversion(const CountsByBasis& counts) {
  counts.require_complete();
  // Correlator table E[i][j] over {I, X, Y, Z}; identity rows are averaged
  // marginals over the three bases that contain them.
  double e[4][4] = {};
  double marg_first[4] = {};
  double marg_second[4] = {};
  for (const auto& [basis, c] : counts.counts) {
    const double n = c[0] + c[1] + c[2] + c[3];
    const int i = static_cast<int>(basis.first);
    const int j = static_cast<int>(basis.second);
    e[i][j] = (c[0] - c[1] - c[2] + c[3]) / n;
    marg_first[i] += (c[0] + c[1] - c[2] - c[3]) / n / 3.0;
    marg_second[j] += (c[0] - c[1] + c[2] - c[3]) / n / 3.0;
  }
  e[0][0] = 1.0;
  for (int k = 1; k < 4; ++k) {
    e[k][0] = marg_first[k];
    e[0][k] = marg_second[k];
  }
  Matrix rho = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      rho += e[i][j] * kron(pauli_matrix(static_cast<Pauli>(i)), pauli_matrix(static_cast<Pauli>(j)));
    }
  }
  rho /= 4.0;
  ReconstructedState r;
  r.method = Reconstruction::Linear;
  r.rho = hermitian_part(rho);
  r.min_eigenvalue = eigh(r.rho).values.minCoeff();
  r.nonpositive = r.min_eigenvalue < -kNonpositiveTol;
  return r;
}

double log_likelihood(const CountsByBasis& counts, const Matrix& rho) {
  double ll = 0.0;
  for (const BasisProjectors& b : all_projectors()) {
    const auto it = counts.counts.find(b.basis);
    if (it == counts.counts.end()) continue;
    const auto p = probabilities(rho, b);
    for (int k = 0; k < 4; ++k) {
      if (it->second[k] > 0.0) ll += it->second[k] * std::log(std::max(p[k], 1e-300));
    }
  }
  return ll;
}

ReconstructedState mle_reconstruct(const CountsByBasis& counts, const MleOptions& opts) {
  counts.require_complete();
  if (opts.max_iters < 1) throw InvalidInput("max_iters must be positive");
  const double total = counts.total();
  const Matrix id = Matrix::Identity(4, 4);

  Matrix rho = id / 4.0;
  double ll = log_likelihood(counts, rho);
  ReconstructedState r;
  r.method = Reconstruction::Mle;
  r.converged = false;
  int it = 0;
  for (; it < opts.max_iters; ++it) {
    Matrix R = Matrix::Zero(4, 4);
    for (const BasisProjectors& b : all_projectors()) {
      const OutcomeCounts& c = counts.counts.at(b.basis);
      const auto p = probabilities(rho, b);
      for (int k = 0; k < 4; ++k) {
        if (c[k] > 0.0) R += (c[k] / total / std::max(p[k], 1e-300)) * b.proj[k];
      }
    }
    double w = 1.0;
    Matrix next;
    double next_ll = ll;
    for (int halvings = 0; halvings < 60; ++halvings) {
      const Matrix G = (1.0 - w) * id + w * R;
      next = G * rho * G.adjoint();
      next = hermitian_part(next / next.trace().real());
      next_ll = log_likelihood(counts, next);
      if (next_ll >= ll - 1e-12 * std::abs(ll)) break;
      w *= 0.5;
    }
    const double change = (next - rho).norm();
    if (next_ll < ll) {
      // No damped step improves the likelihood: we are at the optimum.
      r.converged = true;
      break;
    }
    rho = next;
    ll = next_ll;
    if (change < opts.tol) {
      r.converged = true;
      ++it;
      break;
    }
  }
  r.rho = rho;
  r.loglik = ll;
  r.iterations = it;
  r.min_eigenvalue = eigh(rho).values.minCoeff();
  r.nonpositive = false;
  return r;
}

double pure_fidelity(const Matrix& rho, const Vector& target) {
  if (rho.rows() != target.size()) throw InvalidInput("fidelity target has the wrong dimension");
  const Vector psi = target / target.norm();
  return (psi.adjoint() * rho * psi)(0, 0).real();
}

FidelityEstimate fidelity_with_error(const CountsByBasis& counts, const Vector& target, int boots,
                                     std::uint64_t seed, int threads, const MleOptions& opts) {
  if (boots < 2) throw InvalidInput("bootstrap needs at least two resamples");
  FidelityEstimate est;
  est.boots = boots;
  est.fidelity = pure_fidelity(mle_reconstruct(counts, opts).rho, target);

  struct Slot {
    bool ok = false;
    bool converged = true;
    double fidelity = 0.0;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(boots));
  parallel_for(slots.size(), threads, [&](std::size_t i) {
    Rng rng = make_rng(seed, i);
    CountsByBasis resample;
    for (const auto& [basis, c] : counts.counts) {
      OutcomeCounts d{};
      for (int k = 0; k < 4; ++k) {
        if (c[k] > 0.0) {
          std::poisson_distribution<long long> draw(c[k]);
          d[k] = static_cast<double>(draw(rng));
        }
      }
      resample.counts[basis] = d;
    }
    try {
      resample.require_complete();
    } catch (const InvalidInput&) {
      return;
    }
    const ReconstructedState r = mle_reconstruct(resample, opts);
    slots[i] = Slot{true, r.converged, pure_fidelity(r.rho, target)};
  });

  double sum = 0.0;
  for (const Slot& s : slots) {
    if (!s.ok) {
      ++est.excluded;
      continue;
    }
    ++est.used;
    if (!s.converged) ++est.unconverged;
    sum += s.fidelity;
  }
  if (est.used < 2) throw InvalidInput("fewer than two bootstrap resamples could be reconstructed");
  est.mean = sum / est.used;
  double ss = 0.0;
  for (const Slot& s : slots) {
    if (s.ok) ss += (s.fidelity - est.mean) * (s.fidelity - est.mean);
  }
  est.sigma = std::sqrt(ss / (est.used - 1));
  return est;
}

std::string counts_csv(const CountsByBasis& counts) {
  std::ostringstream os;
  os << "basis_i,basis_j,n_pp,n_pm,n_mp,n_mm\n";
  for (const auto& [basis, c] : counts.counts) {
    os << label(basis.first) << "," << label(basis.second);
    for (double v : c) os << "," << fixed(v, std::round(v) == v ? 0 : 6);
    os << "\n";
  }
  return os.str();
}

CountsByBasis parse_counts_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  CountsByBasis out;
  auto pauli_of = [](const std::string& s, int ln) {
    if (s == "X") return Pauli::X;
    if (s == "Y") return Pauli::Y;
    if (s == "Z") return Pauli::Z;
    throw ConfigError(ln, "basis label must be X, Y or Z, got '" + s + "'");
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (lineno == 1) {
      if (t != "basis_i,basis_j,n_pp,n_pm,n_mp,n_mm") throw ConfigError(1, "unexpected header");
      continue;
    }
    const auto f = split(t, ',');
    if (f.size() != 6) throw ConfigError(lineno, "expected 6 fields");
    const BasisPair basis{pauli_of(trim(f[0]), lineno), pauli_of(trim(f[1]), lineno)};
    OutcomeCounts c{};
    for (int k = 0; k < 4; ++k) {
      c[k] = parse_double(trim(f[2 + k]), lineno);
      if (c[k] < 0.0) throw ConfigError(lineno, "negative count");
    }
    if (!out.counts.emplace(basis, c).second) throw ConfigError(lineno, "basis repeated");
  }
  if (lineno == 0) throw ConfigError(0, "empty counts file");
  return out;
}

Json reconstruction_json(const ReconstructedState& r) {
  Json j{{"method", r.method == Reconstruction::Linear ? "linear" : "mle"},
         {"rho", matrix_json(r.rho)},
         {"min_eigenvalue", json_number(r.min_eigenvalue)},
         {"nonpositive", r.nonpositive}};
  if (r.method == Reconstruction::Mle) {
    j["loglik"] = json_number(r.loglik, 6);
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
  }
  return j;
}

}  // namespace swapgame
