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

#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace swapgame {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Validation tolerances. States and observables are checked once, when they
// are constructed.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPositivityFloor = -1e-10;
inline constexpr double kDichotomicTol = 1e-8;
inline constexpr double kProjectorTol = 1e-9;
inline constexpr int kMaxDim = 256;

/// Raised for malformed inputs: bad labels, mismatched dimensions, matrices
/// that fail their invariants.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Density matrix on a finite-dimensional complex Hilbert space.
///
/// Construction checks Hermiticity, unit trace and positivity; afterwards the
/// value is immutable.
class QuantumState {
 public:
  explicit QuantumState(Matrix rho);

  static QuantumState pure(const Vector& psi);
  static QuantumState maximally_mixed(int dim);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Matrix& matrix() const { return rho_; }

  /// Smallest eigenvalue; handy for diagnostics.
  double min_eigenvalue() const;

  /// True when rho^2 == rho within tolerance.
  bool is_pure(double tol = 1e-9) const;

 private:
  Matrix rho_;
};

/// Hermitian operator. `dichotomic()` additionally requires eigenvalues in
/// {+1, -1}.
class Observable {
 public:
  explicit Observable(Matrix m);

  static Observable dichotomic(Matrix m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  bool is_dichotomic(double tol = kDichotomicTol) const;

  /// Projector onto the eigenspace with eigenvalue `sign` (+1 or -1) of a
  /// dichotomic observable: (I + sign * M) / 2.
  Matrix eigenprojector(int sign) const;

 private:
  Matrix m_;
};

/// Projective measurement with labelled outcomes. Projectors must be
/// Hermitian, idempotent, mutually orthogonal and complete.
class ProjectiveMeasurement {
 public:
  ProjectiveMeasurement(std::vector<std::string> outcomes,
                        std::vector<Matrix> projectors);

  int dim() const { return static_cast<int>(projectors_.front().rows()); }
  std::size_t size() const { return projectors_.size(); }
  const std::vector<std::string>& outcomes() const { return outcomes_; }
  const std::vector<Matrix>& projectors() const { return projectors_; }
  const Matrix& projector(std::size_t i) const { return projectors_.at(i); }

 private:
  std::vector<std::string> outcomes_;
  std::vector<Matrix> projectors_;
};

enum class Pauli { I, X, Y, Z };

Observable pauli(Pauli p);
/// Accepts 'I', 'X', 'Y', 'Z'; anything else is rejected.
Observable pauli(char label);
Matrix pauli_matrix(Pauli p);

/// Bell basis in the order the four outcomes are reported:
/// Phi+ = (|00>+|11>)/sqrt2, Psi+ = (|01>+|10>)/sqrt2,
/// Phi- = (|00>-|11>)/sqrt2, Psi- = (|01>-|10>)/sqrt2.
enum class BellOutcome { PhiPlus = 0, PsiPlus = 1, PhiMinus = 2, PsiMinus = 3 };

inline constexpr std::array<BellOutcome, 4> kBellOutcomes = {
    BellOutcome::PhiPlus, BellOutcome::PsiPlus, BellOutcome::PhiMinus,
    BellOutcome::PsiMinus};

inline int index_of(BellOutcome b) { return static_cast<int>(b); }
std::string_view to_string(BellOutcome b);
/// Accepts "Phi+", "Psi+", "Phi-", "Psi-" (case-insensitive).
BellOutcome parse_bell_outcome(std::string_view label);

Vector bell_vector(BellOutcome b);
QuantumState bell_state(BellOutcome b);

/// Kronecker product; the left factor is the more significant index.
Matrix kron(const Matrix& a, const Matrix& b);
QuantumState tensor(const QuantumState& a, const QuantumState& b);
Observable tensor(const Observable& a, const Observable& b);

/// Reduced operator on the subsystems listed in `keep` (any order; output
/// keeps the original subsystem order). `dims` lists every factor.
Matrix partial_trace(const Matrix& op, std::span<const int> keep,
                     std::span<const int> dims);
QuantumState partial_trace(const QuantumState& state, std::span<const int> keep,
                           std::span<const int> dims);

/// Re tr(rho H). Throws if the imaginary part is not negligible.
double expectation(const QuantumState& state, const Observable& obs);

std::vector<double> born_probs(const QuantumState& state,
                               const ProjectiveMeasurement& m);

/// <psi|rho|psi> for a pure target. Mixed targets are rejected.
double fidelity(const QuantumState& state, const QuantumState& target);

// Hermitian eigen-decomposition helpers shared by the optimizer and the
// reconstruction code. Eigenvalues ascend; every eigenvector has its first
// non-negligible component made real and positive so results are
// reproducible.
struct EigenSystem {
  Eigen::VectorXd values;
  Matrix vectors;
};
EigenSystem eigh(const Matrix& hermitian, bool real_field = false);

Matrix hermitian_part(const Matrix& m);
double hermiticity_error(const Matrix& m);

}  // namespace swapgame
