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

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cavitybell {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Raised when step refinement or Fock-truncation growth fails to settle.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Cavity Fock truncation plus one or two identical atoms.
 *
 * Basis ordering is fixed: cavity photon number first, then atom 1, then
 * atom 2, i.e. index = ((n * L) + j1) * L + j2. Every module goes through
 * basis_index() rather than repeating this arithmetic.
 */
struct HilbertDims {
  int n_max = 0;        ///< highest photon number kept
  int atom_levels = 2;  ///< L, one of {2, 3, 4}
  int n_atoms = 2;      ///< 1 or 2

  /// Throws std::domain_error unless the fields describe a valid space.
  void validate() const;
  [[nodiscard]] int atom_dimension() const;
  [[nodiscard]] int dimension() const;

  friend bool operator==(const HilbertDims&, const HilbertDims&) = default;
};

/// Convenience constructors for the layouts used throughout the project.
HilbertDims two_atom_dims(int atom_levels, int n_max);
/// Atoms only, two qubits, no cavity slot beyond the vacuum (dimension 4).
HilbertDims qubit_pair_dims();
/// A single atom with no cavity (dimension = levels).
HilbertDims single_atom_dims(int atom_levels);

struct BasisLabel {
  int n = 0;
  int j1 = 0;
  int j2 = 0;
  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// For single-atom spaces j2 must be 0. Out-of-range labels throw std::domain_error.
int basis_index(int n, int j1, int j2, const HilbertDims& dims);
BasisLabel basis_label(int index, const HilbertDims& dims);

class StateVector {
 public:
  explicit StateVector(const HilbertDims& dims);
  StateVector(const HilbertDims& dims, CVector amps);

  /// The basis ket |n, j1, j2>.
  static StateVector basis(const HilbertDims& dims, int n, int j1, int j2 = 0);

  [[nodiscard]] const HilbertDims& dims() const { return dims_; }
  [[nodiscard]] const CVector& amps() const { return amps_; }
  CVector& amps() { return amps_; }
  [[nodiscard]] int size() const { return static_cast<int>(amps_.size()); }

  Complex& operator[](int i) { return amps_[i]; }
  const Complex& operator[](int i) const { return amps_[i]; }
  [[nodiscard]] Complex amplitude(int n, int j1, int j2 = 0) const;

  [[nodiscard]] double squared_norm() const { return amps_.squaredNorm(); }
  /// Throws std::domain_error for a (numerically) zero vector.
  [[nodiscard]] StateVector normalized() const;
  [[nodiscard]] Complex inner(const StateVector& other) const;  ///< <this|other>

 private:
  HilbertDims dims_;
  CVector amps_;
};

class OperatorMatrix {
 public:
  explicit OperatorMatrix(const HilbertDims& dims);
  OperatorMatrix(const HilbertDims& dims, CMatrix entries);

  static OperatorMatrix identity(const HilbertDims& dims);

  [[nodiscard]] const HilbertDims& dims() const { return dims_; }
  [[nodiscard]] const CMatrix& entries() const { return entries_; }
  CMatrix& entries() { return entries_; }
  [[nodiscard]] int size() const { return static_cast<int>(entries_.rows()); }

  [[nodiscard]] Complex element(const BasisLabel& row, const BasisLabel& col) const;
  [[nodiscard]] OperatorMatrix adjoint() const;
  [[nodiscard]] StateVector apply(const StateVector& psi) const;
  [[nodiscard]] bool is_hermitian(double rel_tol = 1e-12) const;
  [[nodiscard]] bool all_finite() const;

  OperatorMatrix& operator+=(const OperatorMatrix& rhs);
  OperatorMatrix& operator-=(const OperatorMatrix& rhs);
  OperatorMatrix& operator*=(Complex s);
  friend OperatorMatrix operator+(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs += rhs; }
  friend OperatorMatrix operator-(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs -= rhs; }
  friend OperatorMatrix operator*(Complex s, OperatorMatrix m) { return m *= s; }
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);

 private:
  HilbertDims dims_;
  CMatrix entries_;
};

class DensityMatrix {
 public:
  explicit DensityMatrix(const HilbertDims& dims);
  DensityMatrix(const HilbertDims& dims, CMatrix entries);
  static DensityMatrix from_pure(const StateVector& psi);

  [[nodiscard]] const HilbertDims& dims() const { return dims_; }
  [[nodiscard]] const CMatrix& entries() const { return entries_; }
  CMatrix& entries() { return entries_; }

  [[nodiscard]] Complex trace() const { return entries_.trace(); }
  /// Diagonal element, with round-off below 1e-12 clamped to zero.
  [[nodiscard]] double population(int index) const;
  [[nodiscard]] std::vector<double> populations() const;
  [[nodiscard]] double hermiticity_defect() const;
  [[nodiscard]] double min_eigenvalue() const;

 private:
  HilbertDims dims_;
  CMatrix entries_;
};

// ---- tensor algebra ------------------------------------------------------

/// Photon annihilation operator b acting on the cavity slot.
OperatorMatrix annihilation(const HilbertDims& dims);
/// b^dagger b.
OperatorMatrix photon_number(const HilbertDims& dims);
/// |to><from| acting on atom `atom` (0-based), identity elsewhere.
OperatorMatrix atom_transition(const HilbertDims& dims, int atom, int to, int from);

/// A decay channel sqrt(rate) * op. In the conditional Hamiltonian it shows
/// up as -i/2 * rate * op^dagger op.
struct JumpChannel {
  OperatorMatrix op;
  double rate = 0.0;
  std::string label;
};

// ---- propagation ---------------------------------------------------------

struct IntegratorOptions {
  /// Base step is min(step_scale / omega_max, T / min_steps).
  double step_scale = 1e-2;
  double min_steps = 1000.0;
  double p0_tolerance = 1e-10;
  double amplitude_tolerance = 1e-9;
  int max_halvings = 12;
};

struct NoJumpEvolution {
  StateVector state;     ///< unnormalized conditional state
  double step = 0.0;     ///< final RK4 step size
  std::int64_t steps = 0;
  int halvings = 0;
};

/// Largest absolute row sum of H: an upper bound on every frequency in it.
double frequency_bound(const CMatrix& h);

/**
 * Exact N-fold composition of the classical RK4 step for psi' = -i H psi.
 *
 * Because H is constant, one step is the matrix I + D with
 * D = sum_{k=1..4} (-i H h)^k / k!. The N-step map is formed by binary
 * powering while carrying only the offset from identity
 * (D_{2m} = 2 D_m + D_m^2), which keeps full precision for tiny h.
 */
CMatrix rk4_propagator(const CMatrix& h, double step, std::int64_t n_steps);

/// RK4 propagator over duration T with an explicit step count (no refinement).
CMatrix rk4_propagator_for(const CMatrix& h, double duration, std::int64_t n_steps);

/// Conditional no-jump evolution exp(-i H T) psi0 via RK4 with step halving.
NoJumpEvolution evolve_nojump_detailed(const OperatorMatrix& h, const StateVector& psi0, double duration,
                                       const IntegratorOptions& opts = {});
StateVector evolve_nojump(const OperatorMatrix& h, const StateVector& psi0, double duration,
                          const IntegratorOptions& opts = {});

/// Probability of no emission: the squared norm, clamped into [0, 1].
double survival_probability(const StateVector& psi);

/// Dense Pade scaling-and-squaring reference for exp(-i H T) psi. dim <= 4096.
StateVector expm_oracle(const OperatorMatrix& h, double duration, const StateVector& psi);

/**
 * Reference master-equation integrator
 *   d rho/dt = -i[H, rho] + sum_k rate_k (L rho L^dag - {L^dag L, rho}/2).
 * H must be Hermitian; rates must be non-negative.
 */
DensityMatrix lindblad_reference(const OperatorMatrix& h_sys, const std::vector<JumpChannel>& jumps,
                                 const DensityMatrix& rho0, double duration,
                                 const IntegratorOptions& opts = {});

}  // namespace cavitybell
