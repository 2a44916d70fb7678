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

#include "cavitybell/protocols.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "cavitybell/trajectory.hpp"

namespace cavitybell {

namespace {

using std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

struct TargetOverlap {
  Complex ground;   ///< <0,00|psi>
  Complex trapped;  ///< <0,a|psi>
};

TargetOverlap overlaps(const StateVector& psi) {
  return {psi.amplitude(0, 0, 0), (psi.amplitude(0, 1, 0) - psi.amplitude(0, 0, 1)) * kInvSqrt2};
}

void fill_target_metrics(PreparationResult& r) {
  if (r.p0 <= 0.0) return;
  const TargetOverlap ov = overlaps(r.state);
  const double pg = std::norm(ov.ground);
  const double pa = std::norm(ov.trapped);
  // max over alpha of |<phi_alpha|psi>|^2 is the population of span{|0,00>, |0,a>}
  r.fidelity = pg + pa;
  if (r.fidelity > 0.0) {
    const double phase = std::abs(ov.ground) > 1e-9 ? std::arg(ov.trapped) - std::arg(ov.ground) : std::arg(ov.trapped);
    r.alpha_realized = std::polar(std::sqrt(pa / r.fidelity), phase);
  }
  const Complex a = r.alpha_expected;
  const double rest = std::sqrt(std::max(0.0, 1.0 - std::norm(a)));
  r.fidelity_expected = std::norm(std::conj(a) * ov.trapped + rest * ov.ground);
}

PreparationResult simulate_once(const std::function<OperatorMatrix(const HilbertDims&)>& build, int levels, int n_max,
                                double duration, Complex alpha_expected, const IntegratorOptions& integrator) {
  const HilbertDims dims = two_atom_dims(levels, n_max);
  const OperatorMatrix h = build(dims);
  const NoJumpEvolution evo = evolve_nojump_detailed(h, ground_state(dims), duration, integrator);

  PreparationResult r{0.0, StateVector(dims), 0.0, 0.0, {}, alpha_expected, duration, n_max, evo.step, {}};
  r.p0 = survival_probability(evo.state);
  if (evo.state.squared_norm() > 0.0) r.state = evo.state.normalized();
  fill_target_metrics(r);
  return r;
}

PreparationResult run_preparation(const std::function<OperatorMatrix(const HilbertDims&)>& build, int levels,
                                  double duration, Complex alpha_expected, const PreparationOptions& opts) {
  if (opts.n_max < 0) throw std::invalid_argument("preparation: n_max must be >= 0");
  int n = opts.n_max;
  PreparationResult prev = simulate_once(build, levels, n, duration, alpha_expected, opts.integrator);
  while (n < opts.n_max_limit) {
    PreparationResult next = simulate_once(build, levels, n + 1, duration, alpha_expected, opts.integrator);
    if (std::abs(next.p0 - prev.p0) < opts.truncation_tolerance) return prev;
    prev = std::move(next);
    ++n;
  }
  throw ConvergenceError("preparation: P0 still changing at Fock truncation n_max = " + std::to_string(n));
}

double resolve_duration(const PulseSpec& pulse, Complex omega_minus) {
  if (pulse.duration && pulse.target_alpha) throw std::invalid_argument("PulseSpec: give a duration or a target alpha, not both");
  if (pulse.duration) {
    if (!(*pulse.duration >= 0.0) || !std::isfinite(*pulse.duration)) {
      throw std::invalid_argument("PulseSpec: duration must be finite and >= 0");
    }
    return *pulse.duration;
  }
  if (pulse.target_alpha) return pulse_duration_for_alpha(*pulse.target_alpha, omega_minus);
  throw std::invalid_argument("PulseSpec: neither duration nor target alpha given");
}

}  // namespace

// ---- preparation ---------------------------------------------------------

Complex alpha_for_pulse(Complex omega_minus, double duration) {
  const double mag = std::abs(omega_minus);
  if (mag == 0.0) return {0.0, 0.0};
  return -kI * (omega_minus / mag) * std::sin(mag * duration / 2.0);
}

double pulse_duration_for_alpha(Complex alpha, Complex omega_minus) {
  const double mag = std::abs(omega_minus);
  if (mag == 0.0) throw std::invalid_argument("pulse_duration_for_alpha: Omega_minus is zero");
  const double a = std::abs(alpha);
  if (a > 1.0 + 1e-12) throw std::invalid_argument("pulse_duration_for_alpha: |alpha| > 1");
  if (a == 0.0) return 0.0;
  const Complex expected_phase = -kI * omega_minus / mag;
  if (std::abs(alpha / a - expected_phase) > 1e-9) {
    throw std::invalid_argument("pulse_duration_for_alpha: phase of alpha is not reachable with this drive");
  }
  return 2.0 * std::asin(std::min(a, 1.0)) / mag;
}

double preparation_duration_four_level(const FourLevelParams& p) {
  const double denom = std::abs(p.omega0 * (p.omega_i[0] - p.omega_i[1]));
  if (denom == 0.0) throw std::invalid_argument("four-level preparation needs Omega0 != 0 and Omega^(1) != Omega^(2)");
  if (p.delta3 == 0.0) throw std::invalid_argument("four-level preparation needs Delta3 != 0");
  return 2.0 * std::sqrt(2.0) * pi * std::abs(p.delta3) / denom;
}

StateVector target_state(Complex alpha, const HilbertDims& dims) {
  if (std::abs(alpha) > 1.0 + 1e-12) throw std::invalid_argument("target_state: |alpha| > 1");
  StateVector s(dims);
  const StateVector a = trapped_state(dims);
  s.amps() = alpha * a.amps();
  s[basis_index(0, 0, 0, dims)] += std::sqrt(std::max(0.0, 1.0 - std::norm(alpha)));
  return s;
}

StateVector PreparationResult::atom_qubits() const {
  const HilbertDims q = qubit_pair_dims();
  StateVector out(q);
  for (int j1 = 0; j1 < 2; ++j1) {
    for (int j2 = 0; j2 < 2; ++j2) out[basis_index(0, j1, j2, q)] = state.amplitude(0, j1, j2);
  }
  return out.normalized();
}

double PreparationResult::population_11() const { return std::norm(state.amplitude(0, 1, 1)); }

PreparationResult prepare_two_level(const TwoLevelParams& p, const PulseSpec& pulse, const PreparationOptions& opts) {
  p.validate();
  const double duration = resolve_duration(pulse, p.omega_minus());
  auto build = [&p](const HilbertDims& dims) { return h_cond_two_level(p, dims) + h_laser_two_level(p, dims); };
  PreparationResult r = run_preparation(build, 2, duration, alpha_for_pulse(p.omega_minus(), duration), opts);
  r.regime = validate_regime(p, opts.thresholds);
  return r;
}

PreparationResult prepare_four_level(const FourLevelParams& p, const PreparationOptions& opts) {
  return prepare_four_level(p, PulseSpec::of_duration(preparation_duration_four_level(p)), opts);
}

PreparationResult prepare_four_level(const FourLevelParams& p, const PulseSpec& pulse, const PreparationOptions& opts) {
  p.validate();
  const Complex omega_minus = effective_params(p).omega_eff_minus();
  const double duration = resolve_duration(pulse, omega_minus);
  auto build = [&p](const HilbertDims& dims) { return h_cond_four_level(p, dims); };
  PreparationResult r = run_preparation(build, 4, duration, alpha_for_pulse(omega_minus, duration), opts);
  r.regime = validate_regime(p, opts.thresholds);
  return r;
}

// ---- rotations -----------------------------------------------------------

OperatorMatrix rotation_operator(const RotationSpec& spec) {
  OperatorMatrix u(single_atom_dims(2));
  const Complex c{std::cos(spec.xi), 0.0};
  const Complex s = -kI * std::sin(spec.xi);
  u.entries() << c, s * std::polar(1.0, spec.phi), s * std::polar(1.0, -spec.phi), c;
  return u;
}

RotationPulse rotation_pulse_two_level(double xi, double phi, double omega_abs) {
  if (!(omega_abs >= 0.0) || !std::isfinite(omega_abs)) throw std::invalid_argument("rotation pulse: |Omega| must be finite and >= 0");
  if (xi < 0.0) {  // U(-xi, phi) = U(xi, phi + pi)
    xi = -xi;
    phi += pi;
  }
  if (xi > 0.0 && omega_abs == 0.0) throw std::invalid_argument("rotation pulse: zero drive cannot rotate");
  RotationPulse out;
  out.omega = std::polar(omega_abs, -phi);
  out.duration = xi == 0.0 ? 0.0 : 2.0 * xi / omega_abs;
  return out;
}

RotationPulse rotation_pulse_four_level(double xi, double phi, const FourLevelParams& p, int atom) {
  if (atom < 0 || atom > 1) throw std::domain_error("rotation pulse: atom must be 0 or 1");
  const double om0 = std::abs(p.omega0);
  if (om0 == 0.0) throw std::invalid_argument("rotation pulse: Omega0 must be nonzero");
  if (p.delta3 == 0.0) throw std::invalid_argument("rotation pulse: Delta3 must be nonzero");
  const double weak = std::abs(p.omega_i[static_cast<std::size_t>(atom)]);
  if (xi < 0.0) {
    xi = -xi;
    phi += pi;
  }
  if (xi > 0.0 && weak == 0.0) throw std::invalid_argument("rotation pulse: weak drive must be nonzero");

  // Eliminating level 3 leaves -Omega^(i)* Omega0 / (4 Delta3) on |1><0|,
  // which has to point along e^{-i phi}.
  const double sign = p.delta3 > 0.0 ? 1.0 : -1.0;
  RotationPulse out;
  out.omega = -sign * weak * std::polar(1.0, phi) * (p.omega0 / om0);
  out.duration = xi == 0.0 ? 0.0 : 4.0 * std::abs(p.delta3) * xi / (weak * om0);
  out.global_phase = om0 * om0 * out.duration / (4.0 * p.delta3);
  return out;
}

// ---- shelving ------------------------------------------------------------

ShelvingOutcome shelving_measure(Complex alpha0, Complex alpha1, RandomStream& rng) {
  const double p_emit = std::norm(alpha0);
  if (std::abs(p_emit + std::norm(alpha1) - 1.0) > 1e-9) throw std::invalid_argument("shelving_measure: amplitudes are not normalized");
  return rng.uniform() < p_emit ? ShelvingOutcome::emits : ShelvingOutcome::silent;
}

ShelvingOutcome shelving_measure(Complex alpha0, Complex alpha1, std::uint64_t seed) {
  RandomStream rng(seed);
  return shelving_measure(alpha0, alpha1, rng);
}

double ShelvingParams::minimum_window() const { return std::max(1.0 / gamma_probe, gamma_probe / (omega_probe * omega_probe)); }

RegimeReport validate_shelving(const ShelvingParams& params, const RegimeThresholds& thresholds) {
  RegimeReport r;
  r.checks.push_back(make_check("shelving", "min_window_over_window", Relation::much_less, params.minimum_window(),
                                params.window, thresholds));
  return r;
}

ShelvingRecord shelving_physical_sim(Complex alpha0, const ShelvingParams& params, std::uint64_t seed) {
  if (!(params.omega_probe > 0.0) || !(params.gamma_probe > 0.0) || !(params.window > 0.0)) {
    throw std::invalid_argument("shelving_physical_sim: rates and window must be > 0");
  }
  if (std::abs(alpha0) > 1.0 + 1e-12) throw std::invalid_argument("shelving_physical_sim: |alpha0| > 1");

  const HilbertDims dims = single_atom_dims(3);
  const OperatorMatrix up = atom_transition(dims, 0, 2, 0);
  OperatorMatrix h = Complex{0.5 * params.omega_probe} * (up + up.adjoint());
  h -= (kI * params.gamma_probe) * atom_transition(dims, 0, 2, 2);
  std::vector<JumpChannel> jumps{{atom_transition(dims, 0, 0, 2), 2.0 * params.gamma_probe, "fluorescence"}};

  StateVector psi0(dims);
  psi0[0] = alpha0;
  psi0[1] = std::sqrt(std::max(0.0, 1.0 - std::norm(alpha0)));

  const TrajectorySimulator sim(std::move(h), std::move(jumps), params.window);
  RandomStream rng(seed);
  const TrajectoryRecord rec = sim.run(psi0, rng);
  return ShelvingRecord{static_cast<int>(rec.jumps.size()), validate_shelving(params)};
}

}  // namespace cavitybell
