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

#include "cavitybell/bell_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cavitybell/protocols.hpp"

namespace cavitybell {

namespace {

constexpr double pi = std::numbers::pi;

void require_pair(const StateVector& atoms) {
  const HilbertDims& d = atoms.dims();
  if (d.n_max != 0 || d.atom_levels != 2 || d.n_atoms != 2)
    throw std::invalid_argument("correlation: expected a two-qubit state");
  if (std::abs(atoms.squared_norm() - 1.0) > 1e-9) throw std::invalid_argument("correlation: state is not normalized");
}

double real_expectation(const StateVector& psi, const OperatorMatrix& op) {
  const Complex e = psi.inner(op.apply(psi));
  if (std::abs(e.imag()) > 1e-12) throw std::logic_error("correlation: expectation value is not real");
  return e.real();
}

OperatorMatrix analyzer_rotation(double theta) { return rotation_operator({pi / 4.0, 1.5 * pi - theta}); }

}  // namespace

OperatorMatrix pauli_x() {
  OperatorMatrix m(single_atom_dims(2));
  m.entries() << 0.0, 1.0, 1.0, 0.0;
  return m;
}

OperatorMatrix pauli_y() {
  OperatorMatrix m(single_atom_dims(2));
  m.entries() << Complex{0.0, 0.0}, -kI, kI, Complex{0.0, 0.0};
  return m;
}

OperatorMatrix pauli_z() {
  OperatorMatrix m(single_atom_dims(2));
  m.entries() << -1.0, 0.0, 0.0, 1.0;
  return m;
}

OperatorMatrix sigma_theta(double theta) {
  return Complex{std::cos(theta), 0.0} * pauli_x() + Complex{std::sin(theta), 0.0} * pauli_y();
}

OperatorMatrix kron_qubits(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.size() != 2 || b.size() != 2) throw std::invalid_argument("kron_qubits: expected single-qubit operators");
  CMatrix out(4, 4);
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int k1 = 0; k1 < 2; ++k1)
        for (int k2 = 0; k2 < 2; ++k2)
          out(i1 * 2 + i2, k1 * 2 + k2) = a.entries()(i1, k1) * b.entries()(i2, k2);
  return OperatorMatrix(qubit_pair_dims(), std::move(out));
}

AngleScheme AngleScheme::from_vartheta(double vartheta, double offset) {
  AngleScheme s;
  s.theta2 = offset;
  s.theta1 = offset + vartheta;
  s.theta1_prime = offset - vartheta;
  s.theta2_prime = offset - 2.0 * vartheta;
  return s;
}

double correlation_expectation(const StateVector& atoms, double theta1, double theta2) {
  require_pair(atoms);
  return real_expectation(atoms, kron_qubits(sigma_theta(theta1), sigma_theta(theta2)));
}

double correlation_via_rotation(const StateVector& atoms, double theta1, double theta2) {
  require_pair(atoms);
  const StateVector rotated = kron_qubits(analyzer_rotation(theta1), analyzer_rotation(theta2)).apply(atoms);
  return real_expectation(rotated, kron_qubits(pauli_z(), pauli_z()));
}

double correlation_analytic(Complex alpha, double vartheta) { return -std::norm(alpha) * std::cos(vartheta); }

double bell_s(const std::array<double, 4>& e) {
  for (double v : e)
    if (!(std::abs(v) <= 1.0 + 1e-12)) throw std::invalid_argument("bell_s: correlations must lie in [-1, 1]");
  return std::abs(e[0] - e[1] + e[2] + e[3]);
}

double bell_s_for_state(const StateVector& atoms, const AngleScheme& a) {
  return bell_s({correlation_expectation(atoms, a.theta1, a.theta2),
                 correlation_expectation(atoms, a.theta1, a.theta2_prime),
                 correlation_expectation(atoms, a.theta1_prime, a.theta2),
                 correlation_expectation(atoms, a.theta1_prime, a.theta2_prime)});
}

double bell_s_simplified(Complex alpha, double vartheta) {
  if (std::norm(alpha) > 1.0 + 1e-12) throw std::invalid_argument("bell_s_simplified: |alpha| > 1");
  return std::abs(3.0 * correlation_analytic(alpha, vartheta) - correlation_analytic(alpha, 3.0 * vartheta));
}

double BellScanResult::max_value() const {
  if (values.empty()) throw std::logic_error("bell scan: empty grid");
  return *std::max_element(values.begin(), values.end());
}

std::pair<std::size_t, std::size_t> BellScanResult::argmax() const {
  const double top = max_value();
  const std::size_t cols = vartheta.size();
  for (std::size_t k = 0; k < values.size(); ++k)
    if (values[k] >= top - 1e-12) return {k / cols, k % cols};
  return {0, 0};
}

double BellScanResult::violation_fraction() const {
  if (values.empty()) return 0.0;
  const auto n = std::count_if(values.begin(), values.end(), [](double v) { return v > 2.0; });
  return static_cast<double>(n) / static_cast<double>(values.size());
}

BellScanResult bell_surface(const BellGridSpec& spec) {
  if (spec.omega_minus_t_points < 2 || spec.vartheta_points < 2)
    throw std::invalid_argument("bell_surface: each axis needs at least 2 points");
  if (!(spec.omega_minus_t_max > 0.0) || !(spec.vartheta_max > 0.0))
    throw std::invalid_argument("bell_surface: axis ranges must be positive");
  BellScanResult r;
  r.spec = spec;
  auto axis = [](int n, double hi) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = hi * i / (n - 1);
    return v;
  };
  r.omega_minus_t = axis(spec.omega_minus_t_points, spec.omega_minus_t_max);
  r.vartheta = axis(spec.vartheta_points, spec.vartheta_max);
  r.values.reserve(r.omega_minus_t.size() * r.vartheta.size());
  for (double x : r.omega_minus_t) {
    // |alpha| = |sin(x/2)|; the phase drops out of B_S
    const Complex alpha{std::abs(std::sin(0.5 * x)), 0.0};
    for (double t : r.vartheta) r.values.push_back(bell_s_simplified(alpha, t));
  }
  return r;
}

double observed_bell_with_failures(double p0, double b_ideal) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw std::invalid_argument("observed_bell_with_failures: p0 must lie in [0, 1]");
  if (!(b_ideal >= 0.0)) throw std::invalid_argument("observed_bell_with_failures: B must be >= 0");
  return p0 * b_ideal;
}

}  // namespace cavitybell
