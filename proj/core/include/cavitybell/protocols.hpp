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

#include <cstdint>
#include <optional>
#include <string>

#include "cavitybell/cavity_models.hpp"
#include "cavitybell/regime.hpp"
#include "cavitybell/rng.hpp"

namespace cavitybell {

// ---- entangled-state preparation -----------------------------------------

/// Either an explicit pulse length or the alpha it should realize.
struct PulseSpec {
  std::optional<double> duration;
  std::optional<Complex> target_alpha;

  static PulseSpec of_duration(double t) { return PulseSpec{t, std::nullopt}; }
  static PulseSpec of_alpha(Complex a) { return PulseSpec{std::nullopt, a}; }
};

/// alpha = -i (Omega_minus / |Omega_minus|) sin(|Omega_minus| T / 2); zero for a zero drive.
Complex alpha_for_pulse(Complex omega_minus, double duration);

/// Smallest T >= 0 with sin(|Omega_minus| T / 2) = |alpha|. The phase of a
/// nonzero alpha must be that of -i Omega_minus (to 1e-9), otherwise
/// std::invalid_argument; a zero Omega_minus is an error as well.
double pulse_duration_for_alpha(Complex alpha, Complex omega_minus);

/// Pulse length that drives the effective four-level model to |a>:
/// 2 sqrt(2) pi |Delta3| / |Omega0 (Omega^(1) - Omega^(2))|.
double preparation_duration_four_level(const FourLevelParams& p);

/// Amplitude form of the target |phi> = alpha |a> + sqrt(1 - |alpha|^2) |00>.
StateVector target_state(Complex alpha, const HilbertDims& dims);

struct PreparationOptions {
  int n_max = 2;                       ///< starting Fock truncation
  int n_max_limit = 8;                 ///< give up past this truncation
  double truncation_tolerance = 1e-8;  ///< |P0(n+1) - P0(n)| that counts as converged
  IntegratorOptions integrator{};
  RegimeThresholds thresholds{};
};

struct PreparationResult {
  double p0 = 0.0;             ///< probability of no emission during the pulse
  StateVector state;           ///< normalized conditional state (zero vector if p0 == 0)
  double fidelity = 0.0;       ///< overlap with the target family at the best-fit alpha
  double fidelity_expected = 0.0;  ///< overlap with the target at the analytically expected alpha
  Complex alpha_realized{};
  Complex alpha_expected{};
  double duration = 0.0;
  int n_max = 0;  ///< truncation at which P0 had converged
  double step = 0.0;
  RegimeReport regime;

  /// Two-qubit state of the atoms: cavity-vacuum, ground-manifold block, renormalized.
  [[nodiscard]] StateVector atom_qubits() const;
  /// Population of |11> in the normalized conditional state (cavity vacuum).
  [[nodiscard]] double population_11() const;
};

PreparationResult prepare_two_level(const TwoLevelParams& p, const PulseSpec& pulse,
                                    const PreparationOptions& opts = {});
/// Uses preparation_duration_four_level(p); throws if Omega^(1) == Omega^(2).
PreparationResult prepare_four_level(const FourLevelParams& p, const PreparationOptions& opts = {});
PreparationResult prepare_four_level(const FourLevelParams& p, const PulseSpec& pulse,
                                     const PreparationOptions& opts = {});

// ---- single-qubit rotations -----------------------------------------------

struct RotationSpec {
  double xi = 0.0;
  double phi = 0.0;
};

/// cos(xi) - i sin(xi) (e^{i phi} |0><1| + e^{-i phi} |1><0|) on one qubit.
OperatorMatrix rotation_operator(const RotationSpec& spec);

struct RotationPulse {
  Complex omega;             ///< drive to apply (weak drive for the four-level scheme)
  double duration = 0.0;
  double global_phase = 0.0;  ///< U(T) = exp(i global_phase) * rotation_operator(xi, phi)
};

/// Drive for a free two-level atom: T = 2 xi / |Omega|, Omega = |Omega| e^{-i phi}.
RotationPulse rotation_pulse_two_level(double xi, double phi, double omega_abs);

/**
 * Weak drive on a four-level atom outside the cavity with Omega0, Omega1 on.
 * T = 4 |Delta3| xi / |Omega^(i) Omega0|, the weak-drive magnitude taken from
 * p.omega_i[atom]. The global phase is |Omega0|^2 T / (4 Delta3).
 */
RotationPulse rotation_pulse_four_level(double xi, double phi, const FourLevelParams& p, int atom = 0);

// ---- state measurement by electron shelving -------------------------------

enum class ShelvingOutcome { emits, silent };

/// Ideal readout: emits (qubit found in |0>) with probability |alpha0|^2.
ShelvingOutcome shelving_measure(Complex alpha0, Complex alpha1, RandomStream& rng);
ShelvingOutcome shelving_measure(Complex alpha0, Complex alpha1, std::uint64_t seed);

struct ShelvingParams {
  double omega_probe = 1.0;  ///< Rabi frequency on the 0-2 cycling transition
  double gamma_probe = 1.0;  ///< decay of the auxiliary level
  double window = 100.0;

  [[nodiscard]] double minimum_window() const;  ///< max(1/Gamma2, Gamma2/Omega2^2)
};

RegimeReport validate_shelving(const ShelvingParams& params, const RegimeThresholds& thresholds = {});

struct ShelvingRecord {
  int photon_count = 0;
  RegimeReport regime;  ///< warns when the window is not long enough
};

/// Quantum-jump simulation of the driven three-level atom; alpha1 = sqrt(1 - |alpha0|^2).
ShelvingRecord shelving_physical_sim(Complex alpha0, const ShelvingParams& params, std::uint64_t seed);

}  // namespace cavitybell
