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

// Two-qubit state tomography from the nine local Pauli bases.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "swapgame/quantum.hpp"
#include "swapgame/report.hpp"

namespace swapgame {

using BasisPair = std::pair<Pauli, Pauli>;

/// Outcome order within a basis: (+,+), (+,-), (-,+), (-,-); first sign is
/// qubit 1. Counts are real so expected (noiseless) counts fit too.
using OutcomeCounts = std::array<double, 4>;

struct CountsByBasis {
  std::map<BasisPair, OutcomeCounts> counts;

  /// Throws InvalidInput naming the first missing basis or an empty one.
  void require_complete() const;
  double total() const;
};

/// X, Y, Z in that order.
inline constexpr std::array<Pauli, 3> kMeasuredPaulis = {Pauli::X, Pauli::Y, Pauli::Z};

/// kron((I + s1 P)/2, (I + s2 Q)/2) for the outcome index k.
Matrix outcome_projector(const BasisPair& basis, int k);

/// Born probabilities of all nine bases scaled to n per basis.
CountsByBasis expected_counts(const QuantumState& rho, double n_per_basis);

/// Multinomial draw of n per basis; substream per basis from `seed`.
CountsByBasis simulate_counts(const QuantumState& rho, long long n_per_basis,
                              std::uint64_t seed);

enum class Reconstruction { Linear, Mle };

struct ReconstructedState {
  Reconstruction method = Reconstruction::Linear;
  Matrix rho;
  double min_eigenvalue = 0.0;
  /// Linear inversion only: set when min eigenvalue < -1e-6.
  bool nonpositive = false;
  double loglik = 0.0;  // mle only
  int iterations = 0;
  bool converged = true;

  /// Throws InvalidInput when rho fails the density-matrix checks.
  QuantumState state() const;
};

inline constexpr double kNonpositiveTol = 1e-6;

ReconstructedState linear_inversion(const CountsByBasis& counts);

struct MleOptions {
  int max_iters = 20000;
  double tol = 1e-11;  // Frobenius change of rho between iterations
};

/// Likelihood ascent rho <- G rho G / tr with G = (1 - w) I + w R, starting
/// at I/4 with w = 1. A step that lowers the log-likelihood is retried with
/// w halved.
ReconstructedState mle_reconstruct(const CountsByBasis& counts, const MleOptions& opts = {});

/// sum over measured outcomes of n_k log p_k.
double log_likelihood(const CountsByBasis& counts, const Matrix& rho);

double pure_fidelity(const Matrix& rho, const Vector& target);

struct FidelityEstimate {
  double fidelity = 0.0;  // of the reconstruction from the observed counts
  double mean = 0.0;      // across resamples
  double sigma = 0.0;
  int boots = 0;
  int used = 0;
  /// Resamples with an empty basis, which cannot be reconstructed.
  int excluded = 0;
  /// Resamples kept although the iteration hit max_iters.
  int unconverged = 0;
};

/// Each count is redrawn from Poisson(observed) and reconstructed by MLE.
FidelityEstimate fidelity_with_error(const CountsByBasis& counts, const Vector& target,
                                     int boots, std::uint64_t seed, int threads = 1,
                                     const MleOptions& opts = {});

std::string counts_csv(const CountsByBasis& counts);
/// Header basis_i,basis_j,n_pp,n_pm,n_mp,n_mm; basis labels X, Y, Z.
CountsByBasis parse_counts_csv(std::string_view text);

Json reconstruction_json(const ReconstructedState& r);

}  // namespace swapgame
