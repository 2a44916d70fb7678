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

#include <array>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "cavitybell/quantum_core.hpp"

namespace cavitybell {

// Qubit conventions: sigma_z = |1><1| - |0><0|, so <sigma_z> = 1 - 2|alpha0|^2,
// and sigma_x, sigma_y are the usual matrices in the (|0>, |1>) basis.
OperatorMatrix pauli_x();
OperatorMatrix pauli_y();
OperatorMatrix pauli_z();

/// cos(theta) sigma_x + sin(theta) sigma_y
OperatorMatrix sigma_theta(double theta);

/// a (x) b on the atom pair (atom 1 is the major index).
OperatorMatrix kron_qubits(const OperatorMatrix& a, const OperatorMatrix& b);

/// Equally spaced analyzer angles: theta1 - theta2 = theta2 - theta1' = theta1' - theta2' = vartheta.
struct AngleScheme {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta1_prime = 0.0;
  double theta2_prime = 0.0;

  /// theta2 is pinned to `offset`; the rest follow from vartheta.
  static AngleScheme from_vartheta(double vartheta, double offset = 0.0);
  [[nodiscard]] double vartheta() const { return theta1 - theta2; }
};

/// <psi| sigma_theta1 (x) sigma_theta2 |psi> for a normalized atom-pair state.
double correlation_expectation(const StateVector& atoms, double theta1, double theta2);

/// Same quantity measured the experimental way: rotate each atom by
/// U(pi/4, 3pi/2 - theta_i), then take <sigma_z (x) sigma_z>.
double correlation_via_rotation(const StateVector& atoms, double theta1, double theta2);

/// -|alpha|^2 cos(vartheta)
double correlation_analytic(Complex alpha, double vartheta);

/// |E(t1,t2) - E(t1,t2') + E(t1',t2) + E(t1',t2')| with E values in that order.
double bell_s(const std::array<double, 4>& e);

/// The four-correlation statistic for a state under an angle scheme.
double bell_s_for_state(const StateVector& atoms, const AngleScheme& angles);

/// |3 E(vartheta, 0) - E(3 vartheta, 0)| for the target state family.
double bell_s_simplified(Complex alpha, double vartheta);

struct BellGridSpec {
  int omega_minus_t_points = 201;
  int vartheta_points = 201;
  double omega_minus_t_max = 2.0 * std::numbers::pi;
  double vartheta_max = std::numbers::pi;
};

struct BellScanResult {
  BellGridSpec spec;
  std::vector<double> omega_minus_t;
  std::vector<double> vartheta;
  std::vector<double> values;  ///< row-major: values[i * vartheta.size() + j]
  std::string alpha_model = "alpha = -i e^{i arg Omega_minus} sin(|Omega_minus| T / 2)";

  [[nodiscard]] double at(std::size_t i, std::size_t j) const { return values[i * vartheta.size() + j]; }
  [[nodiscard]] double max_value() const;
  /// First cell (row-major) within 1e-12 of the maximum.
  [[nodiscard]] std::pair<std::size_t, std::size_t> argmax() const;
  [[nodiscard]] double violation_fraction() const;  ///< share of cells with B_S > 2
};

/// B_S over |Omega_minus| T in [0, max] x vartheta in [0, max]; both axes include their endpoints.
BellScanResult bell_surface(const BellGridSpec& spec = {});

/// Observed statistic when failed preparations go undetected and contribute E = 0.
double observed_bell_with_failures(double p0, double b_ideal);

}  // namespace cavitybell
