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

#include "swapgame/quantum.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace swapgame {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows()
       << "x" << m.cols();
    throw InvalidInput(os.str());
  }
  if (m.rows() > kMaxDim) {
    std::ostringstream os;
    os << what << ": dimension " << m.rows() << " exceeds " << kMaxDim;
    throw InvalidInput(os.str());
  }
  if (!m.allFinite()) {
    throw InvalidInput(std::string(what) + ": non-finite entries");
  }
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

// Fixes the phase of an eigenvector: first component above the noise floor
// becomes real and positive.
void normalize_phase(Eigen::Ref<Vector> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > 1e-12) {
      v *= std::conj(v[i]) / mag;
      v[i] = Complex(std::abs(v[i]), 0.0);
      return;
    }
  }
}

}  // namespace

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

double hermiticity_error(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// QuantumState

QuantumState::QuantumState(Matrix rho) : rho_(std::move(rho)) {
  require_square(rho_, "QuantumState");
  if (hermiticity_error(rho_) > kHermitianTol) {
    throw InvalidInput("QuantumState: matrix is not Hermitian");
  }
  const Complex tr = rho_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol) {
    std::ostringstream os;
    os << "QuantumState: trace " << tr.real() << " differs from 1";
    throw InvalidInput(os.str());
  }
  const double lowest = hermitian_eigenvalues(rho_).minCoeff();
  if (lowest < kPositivityFloor) {
    std::ostringstream os;
    os << "QuantumState: negative eigenvalue " << lowest;
    throw InvalidInput(os.str());
  }
}

QuantumState QuantumState::pure(const Vector& psi) {
  const double norm = psi.norm();
  if (psi.size() == 0 || !(norm > 0.0)) {
    throw InvalidInput("QuantumState::pure: zero vector");
  }
  const Vector unit = psi / norm;
  return QuantumState(unit * unit.adjoint());
}

QuantumState QuantumState::maximally_mixed(int dim) {
  if (dim <= 0) throw InvalidInput("maximally_mixed: dim must be positive");
  return QuantumState(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

double QuantumState::min_eigenvalue() const {
  return hermitian_eigenvalues(rho_).minCoeff();
}

bool QuantumState::is_pure(double tol) const {
  return ((rho_ * rho_) - rho_).cwiseAbs().maxCoeff() < tol;
}

// ---------------------------------------------------------------------------
// Observable

Observable::Observable(Matrix m) : m_(std::move(m)) {
  require_square(m_, "Observable");
  if (hermiticity_error(m_) > kHermitianTol) {
    throw InvalidInput("Observable: matrix is not Hermitian");
  }
}

Observable Observable::dichotomic(Matrix m) {
  Observable obs(std::move(m));
  if (!obs.is_dichotomic()) {
    throw InvalidInput("Observable: eigenvalues are not all +1/-1");
  }
  return obs;
}

bool Observable::is_dichotomic(double tol) const {
  const Eigen::VectorXd ev = hermitian_eigenvalues(m_);
  return std::all_of(ev.begin(), ev.end(), [tol](double lambda) {
    return std::abs(std::abs(lambda) - 1.0) < tol;
  });
}

Matrix Observable::eigenprojector(int sign) const {
  if (sign != 1 && sign != -1) {
    throw InvalidInput("eigenprojector: sign must be +1 or -1");
  }
  const Matrix id = Matrix::Identity(dim(), dim());
  return 0.5 * (id + static_cast<double>(sign) * m_);
}

// ---------------------------------------------------------------------------
// ProjectiveMeasurement

ProjectiveMeasurement::ProjectiveMeasurement(std::vector<std::string> outcomes,
                                             std::vector<Matrix> projectors)
    : outcomes_(std::move(outcomes)), projectors_(std::move(projectors)) {
  if (projectors_.empty()) {
    throw InvalidInput("ProjectiveMeasurement: no projectors");
  }
  if (outcomes_.size() != projectors_.size()) {
    throw InvalidInput("ProjectiveMeasurement: outcome/projector count mismatch");
  }
  const Eigen::Index d = projectors_.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < projectors_.size(); ++i) {
    const Matrix& p = projectors_[i];
    require_square(p, "ProjectiveMeasurement");
    if (p.rows() != d) {
      throw InvalidInput("ProjectiveMeasurement: projector dimensions differ");
    }
    if (hermiticity_error(p) > kProjectorTol) {
      throw InvalidInput("ProjectiveMeasurement: projector is not Hermitian");
    }
    if ((p * p - p).cwiseAbs().maxCoeff() > kProjectorTol) {
      throw InvalidInput("ProjectiveMeasurement: projector is not idempotent");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if ((p * projectors_[j]).cwiseAbs().maxCoeff() > kProjectorTol) {
        throw InvalidInput("ProjectiveMeasurement: projectors not orthogonal");
      }
    }
    sum += p;
  }
  if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kProjectorTol) {
    throw InvalidInput("ProjectiveMeasurement: projectors do not sum to identity");
  }
}

// ---------------------------------------------------------------------------
// Paulis and Bell states

Matrix pauli_matrix(Pauli p) {
  Matrix m(2, 2);
  const Complex i(0.0, 1.0);
  switch (p) {
    case Pauli::I:
      m << 1, 0, 0, 1;
      break;
    case Pauli::X:
      m << 0, 1, 1, 0;
      break;
    case Pauli::Y:
      m << 0, -i, i, 0;
      break;
    case Pauli::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

Observable pauli(Pauli p) { return Observable(pauli_matrix(p)); }

Observable pauli(char label) {
  switch (std::toupper(static_cast<unsigned char>(label))) {
    case 'I':
      return pauli(Pauli::I);
    case 'X':
      return pauli(Pauli::X);
    case 'Y':
      return pauli(Pauli::Y);
    case 'Z':
      return pauli(Pauli::Z);
    default:
      throw InvalidInput(std::string("unknown Pauli label '") + label + "'");
  }
}

std::string_view to_string(BellOutcome b) {
  switch (b) {
    case BellOutcome::PhiPlus:
      return "Phi+";
    case BellOutcome::PsiPlus:
      return "Psi+";
    case BellOutcome::PhiMinus:
      return "Phi-";
    case BellOutcome::PsiMinus:
      return "Psi-";
  }
  return "?";
}

BellOutcome parse_bell_outcome(std::string_view label) {
  std::string lower(label);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  if (lower == "phi+") return BellOutcome::PhiPlus;
  if (lower == "psi+") return BellOutcome::PsiPlus;
  if (lower == "phi-") return BellOutcome::PhiMinus;
  if (lower == "psi-") return BellOutcome::PsiMinus;
  throw InvalidInput("unknown Bell outcome '" + std::string(label) + "'");
}

Vector bell_vector(BellOutcome b) {
  const double h = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(4);
  switch (b) {
    case BellOutcome::PhiPlus:
      v[0] = h;
      v[3] = h;
      break;
    case BellOutcome::PsiPlus:
      v[1] = h;
      v[2] = h;
      break;
    case BellOutcome::PhiMinus:
      v[0] = h;
      v[3] = -h;
      break;
    case BellOutcome::PsiMinus:
      v[1] = h;
      v[2] = -h;
      break;
  }
  return v;
}

QuantumState bell_state(BellOutcome b) { return QuantumState::pure(bell_vector(b)); }

// ---------------------------------------------------------------------------
// Composition and reduction

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

QuantumState tensor(const QuantumState& a, const QuantumState& b) {
  return QuantumState(kron(a.matrix(), b.matrix()));
}

Observable tensor(const Observable& a, const Observable& b) {
  return Observable(kron(a.matrix(), b.matrix()));
}

Matrix partial_trace(const Matrix& op, std::span<const int> keep,
                     std::span<const int> dims) {
  if (dims.empty()) throw InvalidInput("partial_trace: empty dims");
  if (keep.empty()) throw InvalidInput("partial_trace: keep set is empty");
  long total = 1;
  for (int d : dims) {
    if (d <= 0) throw InvalidInput("partial_trace: non-positive factor dim");
    total *= d;
  }
  if (op.rows() != total || op.cols() != total) {
    std::ostringstream os;
    os << "partial_trace: dims multiply to " << total << " but operator is "
       << op.rows() << "x" << op.cols();
    throw InvalidInput(os.str());
  }
  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw InvalidInput("partial_trace: keep index out of range");
    if (kept[k]) throw InvalidInput("partial_trace: duplicate keep index");
    kept[k] = true;
  }

  // Strides of each factor in the full index (last factor fastest).
  std::vector<long> stride(n, 1);
  for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];

  std::vector<int> kept_axes, traced_axes;
  for (int k = 0; k < n; ++k) (kept[k] ? kept_axes : traced_axes).push_back(k);

  auto offsets = [&](const std::vector<int>& axes) {
    long count = 1;
    for (int k : axes) count *= dims[k];
    std::vector<long> out(count, 0);
    for (long idx = 0; idx < count; ++idx) {
      long rem = idx, off = 0;
      for (int j = static_cast<int>(axes.size()) - 1; j >= 0; --j) {
        const int k = axes[j];
        off += (rem % dims[k]) * stride[k];
        rem /= dims[k];
      }
      out[idx] = off;
    }
    return out;
  };
  const std::vector<long> kept_off = offsets(kept_axes);
  const std::vector<long> traced_off = offsets(traced_axes);

  const long dk = static_cast<long>(kept_off.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (long i = 0; i < dk; ++i) {
    for (long j = 0; j < dk; ++j) {
      Complex acc(0.0, 0.0);
      for (long t : traced_off) acc += op(kept_off[i] + t, kept_off[j] + t);
      out(i, j) = acc;
    }
  }
  return out;
}

QuantumState partial_trace(const QuantumState& state, std::span<const int> keep,
                           std::span<const int> dims) {
  return QuantumState(partial_trace(state.matrix(), keep, dims));
}

// ---------------------------------------------------------------------------
// Statistics

double expectation(const QuantumState& state, const Observable& obs) {
  if (state.dim() != obs.dim()) {
    throw InvalidInput("expectation: dimension mismatch");
  }
  const Complex value = (state.matrix() * obs.matrix()).trace();
  if (std::abs(value.imag()) > 1e-10) {
    throw InvalidInput("expectation: trace has a non-negligible imaginary part");
  }
  return value.real();
}

std::vector<double> born_probs(const QuantumState& state,
                               const ProjectiveMeasurement& m) {
  if (state.dim() != m.dim()) {
    throw InvalidInput("born_probs: dimension mismatch");
  }
  std::vector<double> probs;
  probs.reserve(m.size());
  for (const Matrix& p : m.projectors()) {
    probs.push_back(std::max(0.0, (p * state.matrix()).trace().real()));
  }
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (double& p : probs) p /= total;
  return probs;
}

double fidelity(const QuantumState& state, const QuantumState& target) {
  if (state.dim() != target.dim()) {
    throw InvalidInput("fidelity: dimension mismatch");
  }
  if (!target.is_pure()) {
    throw InvalidInput("fidelity: target state must be pure");
  }
  // For a pure target rho_t = |psi><psi|, tr(rho rho_t) = <psi|rho|psi>.
  const double f = (state.matrix() * target.matrix()).trace().real();
  return std::clamp(f, 0.0, 1.0);
}

EigenSystem eigh(const Matrix& hermitian, bool real_field) {
  EigenSystem out;
  if (real_field) {
    const Eigen::MatrixXd sym = 0.5 * (hermitian.real() + hermitian.real().transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(hermitian));
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
  }
  for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) {
    normalize_phase(out.vectors.col(k));
  }
  return out;
}

}  // namespace swapgame
