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

#include "cavitybell/quantum_core.hpp"

namespace cavitybell {

/// Two two-level atoms in a leaky cavity. Rates in units of g, hbar = 1.
struct TwoLevelParams {
  double g = 1.0;      ///< atom-cavity coupling, real and equal for both atoms
  double kappa = 1.0;  ///< cavity leak rate
  double gamma = 0.0;  ///< spontaneous decay rate of |1>
  Complex omega1{0.0, 0.0};
  Complex omega2{0.0, 0.0};

  /// (omega1 + omega2) / sqrt(2)
  [[nodiscard]] Complex omega_plus() const;
  /// (omega1 - omega2) / sqrt(2); the only combination that drives the trapped state.
  [[nodiscard]] Complex omega_minus() const;
  void validate() const;
};

/// Two four-level atoms: ground states 0, 1; excited 2 (cavity/Omega1) and 3 (Omega0/weak drive).
struct FourLevelParams {
  double g = 1.0;
  double kappa = 0.0025;
  double gamma2 = 0.0;
  double gamma3 = 0.0;
  double delta2 = 400.0;
  double delta3 = 400.0;
  Complex omega0{2.0, 0.0};
  Complex omega1{2.0, 0.0};
  std::array<Complex, 2> omega_i{Complex{0.01, 0.0}, Complex{-0.01, 0.0}};

  void validate() const;
};

struct EffectiveParams {
  Complex g_eff;
  std::array<Complex, 2> omega_eff;

  [[nodiscard]] Complex omega_eff_minus() const;
};

/// Conditional Hamiltonian of the two-level scheme without laser:
/// i g sum_i (b |1><0|_i - h.c.) - i Gamma sum_i |1><1|_i - i kappa b^dag b.
OperatorMatrix h_cond_two_level(const TwoLevelParams& p, const HilbertDims& dims);

/// (1/2) sum_i (Omega^(i) |1><0|_i + h.c.). Hermitian for any complex drive.
OperatorMatrix h_laser_two_level(const TwoLevelParams& p, const HilbertDims& dims);

/// Projector onto span{|0,00>, |0,a>} with |a> = (|10> - |01>)/sqrt(2).
OperatorMatrix dfs_projector(const HilbertDims& dims);

/// The trapped state |0, a> and the ground state |0, 00> in the given space.
StateVector trapped_state(const HilbertDims& dims);
StateVector ground_state(const HilbertDims& dims);

/// P H P. Throws std::invalid_argument if P is not an orthogonal projector to 1e-10.
OperatorMatrix h_eff_zeno(const OperatorMatrix& h_total, const OperatorMatrix& projector);

/// Full conditional Hamiltonian of two four-level atoms in the rotating frame.
OperatorMatrix h_cond_four_level(const FourLevelParams& p, const HilbertDims& dims);

/// Cavity coupling and Rabi frequencies left after eliminating levels 2 and 3.
EffectiveParams effective_params(const FourLevelParams& p);

/**
 * Ground-manifold Hamiltonian after adiabatic elimination, in a space with
 * atom_levels = 2 (levels 0, 1 of each atom).
 *
 * The AC-Stark line (|Omega1|^2/Delta2, |Omega0|^2/Delta3,
 * |Omega^(i)|^2/Delta3 and 4 g^2/Delta2 b^dag b) is included unless
 * `include_level_shifts` is false.
 */
OperatorMatrix h_eff_four_level(const FourLevelParams& p, const HilbertDims& dims_reduced,
                                bool include_level_shifts = true);

/// The single-atom conditional Hamiltonian used for a rotation outside the cavity.
OperatorMatrix h_rotation_four_level(const FourLevelParams& p, int atom);

/// Jump channels consistent with h_cond_two_level: sqrt(2 kappa) b and sqrt(2 Gamma) |0><1|_i.
std::vector<JumpChannel> jump_channels_two_level(const TwoLevelParams& p, const HilbertDims& dims);

}  // namespace cavitybell
