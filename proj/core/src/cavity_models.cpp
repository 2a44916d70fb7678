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

#include "cavitybell/cavity_models.hpp"

#include <cmath>
#include <stdexcept>

namespace cavitybell {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void require_two_atoms(const HilbertDims& dims, int levels, const char* who) {
  dims.validate();
  if (dims.atom_levels != levels || dims.n_atoms != 2) {
    throw std::invalid_argument(std::string(who) + ": expected two " + std::to_string(levels) + "-level atoms");
  }
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be finite");
}

void require_finite(Complex v, const char* name) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw std::invalid_argument(std::string(name) + " must be finite");
}

// Hermitian drive (1/2)(omega |to><from| + h.c.) on one atom.
OperatorMatrix drive(const HilbertDims& dims, int atom, int to, int from, Complex omega) {
  OperatorMatrix up = atom_transition(dims, atom, to, from);
  OperatorMatrix term = (0.5 * omega) * up;
  term += (0.5 * std::conj(omega)) * up.adjoint();
  return term;
}

// i (c b |to><from| - c* b^dag |from><to|) on one atom.
OperatorMatrix cavity_exchange(const HilbertDims& dims, int atom, int to, int from, Complex c) {
  const OperatorMatrix lower = annihilation(dims) * atom_transition(dims, atom, to, from);
  OperatorMatrix term = (kI * c) * lower;
  term -= (kI * std::conj(c)) * lower.adjoint();
  return term;
}

}  // namespace

Complex TwoLevelParams::omega_plus() const { return (omega1 + omega2) * kInvSqrt2; }
Complex TwoLevelParams::omega_minus() const { return (omega1 - omega2) * kInvSqrt2; }

void TwoLevelParams::validate() const {
  require_finite(g, "g");
  require_finite(kappa, "kappa");
  require_finite(gamma, "gamma");
  require_finite(omega1, "omega1");
  require_finite(omega2, "omega2");
  if (kappa < 0.0) throw std::invalid_argument("kappa must be >= 0");
  if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
}

void FourLevelParams::validate() const {
  for (auto [v, name] : {std::pair{g, "g"}, {kappa, "kappa"}, {gamma2, "gamma2"}, {gamma3, "gamma3"},
                         {delta2, "delta2"}, {delta3, "delta3"}}) {
    require_finite(v, name);
  }
  require_finite(omega0, "omega0");
  require_finite(omega1, "omega1");
  require_finite(omega_i[0], "omega_i1");
  require_finite(omega_i[1], "omega_i2");
  if (kappa < 0.0) throw std::invalid_argument("kappa must be >= 0");
  if (gamma2 < 0.0 || gamma3 < 0.0) throw std::invalid_argument("gamma2 and gamma3 must be >= 0");
  if (delta2 == 0.0 || delta3 == 0.0) throw std::invalid_argument("delta2 and delta3 must be nonzero");
}

Complex EffectiveParams::omega_eff_minus() const { return (omega_eff[0] - omega_eff[1]) * kInvSqrt2; }

OperatorMatrix h_cond_two_level(const TwoLevelParams& p, const HilbertDims& dims) {
  require_two_atoms(dims, 2, "h_cond_two_level");
  p.validate();
  OperatorMatrix h(dims);
  for (int atom = 0; atom < 2; ++atom) {
    h += cavity_exchange(dims, atom, 1, 0, Complex{p.g, 0.0});
    h -= (kI * p.gamma) * atom_transition(dims, atom, 1, 1);
  }
  h -= (kI * p.kappa) * photon_number(dims);
  return h;
}

OperatorMatrix h_laser_two_level(const TwoLevelParams& p, const HilbertDims& dims) {
  require_two_atoms(dims, 2, "h_laser_two_level");
  p.validate();
  OperatorMatrix h(dims);
  h += drive(dims, 0, 1, 0, p.omega1);
  h += drive(dims, 1, 1, 0, p.omega2);
  return h;
}

StateVector ground_state(const HilbertDims& dims) { return StateVector::basis(dims, 0, 0, 0); }

StateVector trapped_state(const HilbertDims& dims) {
  require_two_atoms(dims, dims.atom_levels, "trapped_state");
  StateVector a(dims);
  a[basis_index(0, 1, 0, dims)] = kInvSqrt2;
  a[basis_index(0, 0, 1, dims)] = -kInvSqrt2;
  return a;
}

OperatorMatrix dfs_projector(const HilbertDims& dims) {
  require_two_atoms(dims, 2, "dfs_projector");
  const CVector g = ground_state(dims).amps();
  const CVector a = trapped_state(dims).amps();
  return OperatorMatrix(dims, g * g.adjoint() + a * a.adjoint());
}

OperatorMatrix h_eff_zeno(const OperatorMatrix& h_total, const OperatorMatrix& projector) {
  if (!(h_total.dims() == projector.dims())) throw std::invalid_argument("h_eff_zeno: dimension mismatch");
  const CMatrix& p = projector.entries();
  if ((p * p - p).cwiseAbs().maxCoeff() > 1e-10 || (p - p.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("h_eff_zeno: argument is not an orthogonal projector");
  }
  return projector * h_total * projector;
}

OperatorMatrix h_cond_four_level(const FourLevelParams& p, const HilbertDims& dims) {
  require_two_atoms(dims, 4, "h_cond_four_level");
  p.validate();
  OperatorMatrix h(dims);
  for (int atom = 0; atom < 2; ++atom) {
    h += cavity_exchange(dims, atom, 2, 0, Complex{p.g, 0.0});
    h += drive(dims, atom, 2, 1, p.omega1);
    h += drive(dims, atom, 3, 0, p.omega0);
    h += drive(dims, atom, 3, 1, p.omega_i[static_cast<std::size_t>(atom)]);
    // -i (Gamma_j + i Delta_j) |j><j| = (Delta_j - i Gamma_j) |j><j|
    h += Complex{p.delta2, -p.gamma2} * atom_transition(dims, atom, 2, 2);
    h += Complex{p.delta3, -p.gamma3} * atom_transition(dims, atom, 3, 3);
  }
  h -= (kI * p.kappa) * photon_number(dims);
  return h;
}

EffectiveParams effective_params(const FourLevelParams& p) {
  if (p.delta2 == 0.0 || p.delta3 == 0.0) throw std::invalid_argument("effective_params: zero detuning");
  EffectiveParams e;
  e.g_eff = -p.g * std::conj(p.omega1) / (2.0 * p.delta2);
  for (std::size_t i = 0; i < 2; ++i) e.omega_eff[i] = -p.omega_i[i] * std::conj(p.omega0) / (2.0 * p.delta3);
  return e;
}

OperatorMatrix h_eff_four_level(const FourLevelParams& p, const HilbertDims& dims_reduced, bool include_level_shifts) {
  require_two_atoms(dims_reduced, 2, "h_eff_four_level");
  p.validate();
  const EffectiveParams e = effective_params(p);
  const HilbertDims& dims = dims_reduced;
  OperatorMatrix h(dims);
  for (int atom = 0; atom < 2; ++atom) {
    h += cavity_exchange(dims, atom, 1, 0, e.g_eff);
    h += drive(dims, atom, 1, 0, e.omega_eff[static_cast<std::size_t>(atom)]);
  }
  h -= (kI * p.kappa) * photon_number(dims);
  if (include_level_shifts) {
    const OperatorMatrix num = photon_number(dims);
    for (int atom = 0; atom < 2; ++atom) {
      const double drive_i = std::norm(p.omega_i[static_cast<std::size_t>(atom)]);
      const OperatorMatrix p0 = atom_transition(dims, atom, 0, 0);
      const OperatorMatrix p1 = atom_transition(dims, atom, 1, 1);
      OperatorMatrix shift = Complex{std::norm(p.omega1) / p.delta2 + drive_i / p.delta3} * p1;
      shift += Complex{std::norm(p.omega0) / p.delta3} * p0;
      shift += Complex{4.0 * p.g * p.g / p.delta2} * (num * p0);
      h -= Complex{0.25} * shift;
    }
  }
  return h;
}

OperatorMatrix h_rotation_four_level(const FourLevelParams& p, int atom) {
  p.validate();
  if (atom < 0 || atom > 1) throw std::domain_error("h_rotation_four_level: atom must be 0 or 1");
  const HilbertDims dims = single_atom_dims(4);
  OperatorMatrix h(dims);
  h += drive(dims, 0, 2, 1, p.omega1);
  h += drive(dims, 0, 3, 0, p.omega0);
  h += drive(dims, 0, 3, 1, p.omega_i[static_cast<std::size_t>(atom)]);
  h += Complex{p.delta2, -p.gamma2} * atom_transition(dims, 0, 2, 2);
  h += Complex{p.delta3, -p.gamma3} * atom_transition(dims, 0, 3, 3);
  return h;
}

std::vector<JumpChannel> jump_channels_two_level(const TwoLevelParams& p, const HilbertDims& dims) {
  require_two_atoms(dims, 2, "jump_channels_two_level");
  std::vector<JumpChannel> out;
  if (p.kappa > 0.0) out.push_back({annihilation(dims), 2.0 * p.kappa, "cavity"});
  if (p.gamma > 0.0) {
    out.push_back({atom_transition(dims, 0, 0, 1), 2.0 * p.gamma, "atom1"});
    out.push_back({atom_transition(dims, 1, 0, 1), 2.0 * p.gamma, "atom2"});
  }
  return out;
}

}  // namespace cavitybell
