// Copyright 2026 The cavitybell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cavitybell/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace cavitybell {

namespace {

void require_same_dims(const HilbertDims& a, const HilbertDims& b, const char* what) {
  if (!(a == b)) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

}  // namespace

// ---- HilbertDims ---------------------------------------------------------

void HilbertDims::validate() const {
  if (n_max < 0) throw std::domain_error("HilbertDims: n_max must be >= 0");
  if (atom_levels < 2 || atom_levels > 4) throw std::domain_error("HilbertDims: atom_levels must be 2, 3 or 4");
  if (n_atoms < 1 || n_atoms > 2) throw std::domain_error("HilbertDims: n_atoms must be 1 or 2");
}

int HilbertDims::atom_dimension() const { return n_atoms == 2 ? atom_levels * atom_levels : atom_levels; }

int HilbertDims::dimension() const { return (n_max + 1) * atom_dimension(); }

HilbertDims two_atom_dims(int atom_levels, int n_max) {
  HilbertDims d{n_max, atom_levels, 2};
  d.validate();
  return d;
}

HilbertDims qubit_pair_dims() { return HilbertDims{0, 2, 2}; }

HilbertDims single_atom_dims(int atom_levels) {
  HilbertDims d{0, atom_levels, 1};
  d.validate();
  return d;
}

int basis_index(int n, int j1, int j2, const HilbertDims& dims) {
  dims.validate();
  const int L = dims.atom_levels;
  if (n < 0 || n > dims.n_max) throw std::domain_error("basis_index: photon number out of range");
  if (j1 < 0 || j1 >= L) throw std::domain_error("basis_index: atom-1 level out of range");
  if (dims.n_atoms == 1) {
    if (j2 != 0) throw std::domain_error("basis_index: single-atom space has no second atom");
    return n * L + j1;
  }
  if (j2 < 0 || j2 >= L) throw std::domain_error("basis_index: atom-2 level out of range");
  return (n * L + j1) * L + j2;
}

BasisLabel basis_label(int index, const HilbertDims& dims) {
  dims.validate();
  if (index < 0 || index >= dims.dimension()) throw std::domain_error("basis_label: index out of range");
  const int L = dims.atom_levels;
  if (dims.n_atoms == 1) return BasisLabel{index / L, index % L, 0};
  return BasisLabel{index / (L * L), (index / L) % L, index % L};
}

// ---- StateVector ---------------------------------------------------------

StateVector::StateVector(const HilbertDims& dims) : dims_(dims) {
  dims_.validate();
  amps_ = CVector::Zero(dims_.dimension());
}

StateVector::StateVector(const HilbertDims& dims, CVector amps) : dims_(dims), amps_(std::move(amps)) {
  dims_.validate();
  if (amps_.size() != dims_.dimension()) throw std::invalid_argument("StateVector: amplitude count does not match dims");
}

StateVector StateVector::basis(const HilbertDims& dims, int n, int j1, int j2) {
  StateVector s(dims);
  s.amps_[basis_index(n, j1, j2, dims)] = 1.0;
  return s;
}

Complex StateVector::amplitude(int n, int j1, int j2) const { return amps_[basis_index(n, j1, j2, dims_)]; }

StateVector StateVector::normalized() const {
  const double nrm = amps_.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw std::domain_error("StateVector::normalized: zero or non-finite norm");
  return StateVector(dims_, amps_ / nrm);
}

Complex StateVector::inner(const StateVector& other) const {
  require_same_dims(dims_, other.dims_, "StateVector::inner");
  return amps_.dot(other.amps_);  // Eigen's dot conjugates the left operand
}

// ---- OperatorMatrix ------------------------------------------------------

OperatorMatrix::OperatorMatrix(const HilbertDims& dims) : dims_(dims) {
  dims_.validate();
  entries_ = CMatrix::Zero(dims_.dimension(), dims_.dimension());
}

OperatorMatrix::OperatorMatrix(const HilbertDims& dims, CMatrix entries) : dims_(dims), entries_(std::move(entries)) {
  dims_.validate();
  if (entries_.rows() != dims_.dimension() || entries_.cols() != dims_.dimension()) {
    throw std::invalid_argument("OperatorMatrix: entry shape does not match dims");
  }
}

OperatorMatrix OperatorMatrix::identity(const HilbertDims& dims) {
  dims.validate();
  return OperatorMatrix(dims, CMatrix::Identity(dims.dimension(), dims.dimension()));
}

Complex OperatorMatrix::element(const BasisLabel& row, const BasisLabel& col) const {
  return entries_(basis_index(row.n, row.j1, row.j2, dims_), basis_index(col.n, col.j1, col.j2, dims_));
}

OperatorMatrix OperatorMatrix::adjoint() const { return OperatorMatrix(dims_, entries_.adjoint()); }

StateVector OperatorMatrix::apply(const StateVector& psi) const {
  require_same_dims(dims_, psi.dims(), "OperatorMatrix::apply");
  return StateVector(dims_, entries_ * psi.amps());
}

bool OperatorMatrix::is_hermitian(double rel_tol) const {
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

bool OperatorMatrix::all_finite() const { return entries_.allFinite(); }

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& rhs) {
  require_same_dims(dims_, rhs.dims_, "OperatorMatrix::operator+=");
  entries_ += rhs.entries_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& rhs) {
  require_same_dims(dims_, rhs.dims_, "OperatorMatrix::operator-=");
  entries_ -= rhs.entries_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(Complex s) {
  entries_ *= s;
  return *this;
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_dims(a.dims(), b.dims(), "OperatorMatrix::operator*");
  return OperatorMatrix(a.dims(), a.entries() * b.entries());
}

// ---- DensityMatrix -------------------------------------------------------

DensityMatrix::DensityMatrix(const HilbertDims& dims) : dims_(dims) {
  dims_.validate();
  entries_ = CMatrix::Zero(dims_.dimension(), dims_.dimension());
}

DensityMatrix::DensityMatrix(const HilbertDims& dims, CMatrix entries) : dims_(dims), entries_(std::move(entries)) {
  dims_.validate();
  if (entries_.rows() != dims_.dimension() || entries_.cols() != dims_.dimension()) {
    throw std::invalid_argument("DensityMatrix: entry shape does not match dims");
  }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return DensityMatrix(psi.dims(), psi.amps() * psi.amps().adjoint());
}

double DensityMatrix::population(int index) const {
  const double p = entries_(index, index).real();
  return std::abs(p) < 1e-12 ? std::max(p, 0.0) : p;
}

std::vector<double> DensityMatrix::populations() const {
  std::vector<double> out(static_cast<std::size_t>(entries_.rows()));
  for (int i = 0; i < entries_.rows(); ++i) out[static_cast<std::size_t>(i)] = population(i);
  return out;
}

double DensityMatrix::hermiticity_defect() const { return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff(); }

double DensityMatrix::min_eigenvalue() const {
  const CMatrix herm = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// ---- tensor algebra ------------------------------------------------------

OperatorMatrix annihilation(const HilbertDims& dims) {
  OperatorMatrix b(dims);
  const int atom_dim = dims.atom_dimension();
  for (int n = 1; n <= dims.n_max; ++n) {
    const double amp = std::sqrt(static_cast<double>(n));
    for (int a = 0; a < atom_dim; ++a) {
      b.entries()((n - 1) * atom_dim + a, n * atom_dim + a) = amp;
    }
  }
  return b;
}

OperatorMatrix photon_number(const HilbertDims& dims) {
  OperatorMatrix num(dims);
  for (int i = 0; i < dims.dimension(); ++i) num.entries()(i, i) = basis_label(i, dims).n;
  return num;
}

OperatorMatrix atom_transition(const HilbertDims& dims, int atom, int to, int from) {
  dims.validate();
  if (atom < 0 || atom >= dims.n_atoms) throw std::domain_error("atom_transition: atom index out of range");
  if (to < 0 || to >= dims.atom_levels || from < 0 || from >= dims.atom_levels) {
    throw std::domain_error("atom_transition: level out of range");
  }
  OperatorMatrix op(dims);
  for (int col = 0; col < dims.dimension(); ++col) {
    BasisLabel l = basis_label(col, dims);
    int& level = atom == 0 ? l.j1 : l.j2;
    if (level != from) continue;
    level = to;
    op.entries()(basis_index(l.n, l.j1, l.j2, dims), col) = 1.0;
  }
  return op;
}

// ---- propagation ---------------------------------------------------------

double frequency_bound(const CMatrix& h) {
  if (h.size() == 0) return 0.0;
  return h.cwiseAbs().rowwise().sum().maxCoeff();
}

CMatrix rk4_propagator(const CMatrix& h, double step, std::int64_t n_steps) {
  if (n_steps < 0) throw std::invalid_argument("rk4_propagator: negative step count");
  const Eigen::Index dim = h.rows();
  const CMatrix id = CMatrix::Identity(dim, dim);
  const CMatrix a = (-kI * step) * h;

  // One RK4 step for a linear system: I + A + A^2/2 + A^3/6 + A^4/24.
  CMatrix offset = a * (id + (a / 2.0) * (id + (a / 3.0) * (id + a / 4.0)));
  CMatrix total = CMatrix::Zero(dim, dim);
  std::int64_t remaining = n_steps;
  while (remaining > 0) {
    if (remaining & 1) total = total + offset + total * offset;
    remaining >>= 1;
    if (remaining > 0) offset = 2.0 * offset + offset * offset;
  }
  return id + total;
}

CMatrix rk4_propagator_for(const CMatrix& h, double duration, std::int64_t n_steps) {
  if (n_steps <= 0) return CMatrix::Identity(h.rows(), h.cols());
  return rk4_propagator(h, duration / static_cast<double>(n_steps), n_steps);
}

NoJumpEvolution evolve_nojump_detailed(const OperatorMatrix& h, const StateVector& psi0, double duration,
                                       const IntegratorOptions& opts) {
  require_same_dims(h.dims(), psi0.dims(), "evolve_nojump");
  if (!h.all_finite()) throw std::invalid_argument("evolve_nojump: Hamiltonian has non-finite entries");
  if (!(duration >= 0.0) || !std::isfinite(duration)) throw std::invalid_argument("evolve_nojump: duration must be finite and >= 0");

  const double omega_max = frequency_bound(h.entries());
  if (duration == 0.0 || omega_max == 0.0) return NoJumpEvolution{psi0, duration, 0, 0};

  const double base_step = std::min(opts.step_scale / omega_max, duration / opts.min_steps);
  auto n_steps = static_cast<std::int64_t>(std::ceil(duration / base_step));
  if (duration / base_step > 1e17) throw ConvergenceError("evolve_nojump: step count overflow");

  CVector prev = rk4_propagator_for(h.entries(), duration, n_steps) * psi0.amps();
  for (int halving = 1; halving <= opts.max_halvings; ++halving) {
    n_steps *= 2;
    CVector cur = rk4_propagator_for(h.entries(), duration, n_steps) * psi0.amps();
    const double dp0 = std::abs(cur.squaredNorm() - prev.squaredNorm());
    const double damp = (cur - prev).cwiseAbs().maxCoeff();
    if (dp0 < opts.p0_tolerance && damp < opts.amplitude_tolerance) {
      return NoJumpEvolution{StateVector(psi0.dims(), std::move(cur)), duration / static_cast<double>(n_steps),
                             n_steps, halving};
    }
    prev = std::move(cur);
  }
  throw ConvergenceError("evolve_nojump: step refinement did not converge after " +
                         std::to_string(opts.max_halvings) + " halvings");
}

StateVector evolve_nojump(const OperatorMatrix& h, const StateVector& psi0, double duration,
                          const IntegratorOptions& opts) {
  return evolve_nojump_detailed(h, psi0, duration, opts).state;
}

double survival_probability(const StateVector& psi) {
  return std::clamp(psi.squared_norm(), 0.0, 1.0);
}

StateVector expm_oracle(const OperatorMatrix& h, double duration, const StateVector& psi) {
  require_same_dims(h.dims(), psi.dims(), "expm_oracle");
  if (h.size() > 4096) throw std::invalid_argument("expm_oracle: dimension above 4096");
  const CMatrix generator = (-kI * duration) * h.entries();
  const CMatrix propagator = generator.exp();
  return StateVector(psi.dims(), propagator * psi.amps());
}

}  // namespace cavitybell
