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

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "cavitybell/quantum_core.hpp"

namespace cavitybell {

namespace {

// Superoperator dimension above which we step the matrix equation directly.
constexpr Eigen::Index kMaxSuperoperatorDim = 32;

CMatrix lindblad_rhs(const CMatrix& h, const std::vector<JumpChannel>& jumps, const std::vector<CMatrix>& ldl,
                     const CMatrix& rho) {
  CMatrix out = -kI * (h * rho - rho * h);
  for (std::size_t k = 0; k < jumps.size(); ++k) {
    const CMatrix& l = jumps[k].op.entries();
    out += jumps[k].rate * (l * rho * l.adjoint() - 0.5 * (ldl[k] * rho + rho * ldl[k]));
  }
  return out;
}

// Column-major vectorization: vec(A X B) = (B^T kron A) vec(X).
CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix liouvillian(const CMatrix& h, const std::vector<JumpChannel>& jumps, const std::vector<CMatrix>& ldl) {
  const Eigen::Index d = h.rows();
  const CMatrix id = CMatrix::Identity(d, d);
  CMatrix sup = -kI * (kron(id, h) - kron(h.transpose(), id));
  for (std::size_t k = 0; k < jumps.size(); ++k) {
    const CMatrix& l = jumps[k].op.entries();
    sup += jumps[k].rate * (kron(l.conjugate(), l) - 0.5 * kron(id, ldl[k]) - 0.5 * kron(ldl[k].transpose(), id));
  }
  return sup;
}

CMatrix step_directly(const CMatrix& h, const std::vector<JumpChannel>& jumps, const std::vector<CMatrix>& ldl,
                      CMatrix rho, double duration, std::int64_t n_steps) {
  const double dt = duration / static_cast<double>(n_steps);
  for (std::int64_t s = 0; s < n_steps; ++s) {
    const CMatrix k1 = lindblad_rhs(h, jumps, ldl, rho);
    const CMatrix k2 = lindblad_rhs(h, jumps, ldl, rho + 0.5 * dt * k1);
    const CMatrix k3 = lindblad_rhs(h, jumps, ldl, rho + 0.5 * dt * k2);
    const CMatrix k4 = lindblad_rhs(h, jumps, ldl, rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

}  // namespace

DensityMatrix lindblad_reference(const OperatorMatrix& h_sys, const std::vector<JumpChannel>& jumps,
                                 const DensityMatrix& rho0, double duration, const IntegratorOptions& opts) {
  if (!(h_sys.dims() == rho0.dims())) throw std::invalid_argument("lindblad_reference: dimension mismatch");
  if (!(duration >= 0.0) || !std::isfinite(duration)) throw std::invalid_argument("lindblad_reference: bad duration");
  if (!h_sys.is_hermitian(1e-12)) throw std::invalid_argument("lindblad_reference: system Hamiltonian is not Hermitian");

  std::vector<CMatrix> ldl;
  double omega_max = frequency_bound(h_sys.entries());
  for (const auto& j : jumps) {
    if (!(j.rate >= 0.0)) throw std::invalid_argument("lindblad_reference: negative rate for channel '" + j.label + "'");
    if (!(j.op.dims() == rho0.dims())) throw std::invalid_argument("lindblad_reference: jump dimension mismatch");
    ldl.push_back(j.op.entries().adjoint() * j.op.entries());
    omega_max += j.rate * frequency_bound(ldl.back());
  }
  if (duration == 0.0 || omega_max == 0.0) return rho0;

  const double base_step = std::min(opts.step_scale / omega_max, duration / opts.min_steps);
  auto n_steps = static_cast<std::int64_t>(std::ceil(duration / base_step));
  const Eigen::Index d = rho0.entries().rows();

  if (d > kMaxSuperoperatorDim) {
    const CMatrix coarse = step_directly(h_sys.entries(), jumps, ldl, rho0.entries(), duration, n_steps);
    const CMatrix fine = step_directly(h_sys.entries(), jumps, ldl, rho0.entries(), duration, 2 * n_steps);
    if ((fine - coarse).cwiseAbs().maxCoeff() > 1e3 * opts.amplitude_tolerance) {
      throw ConvergenceError("lindblad_reference: direct stepping did not settle");
    }
    return DensityMatrix(rho0.dims(), fine);
  }

  // The Liouvillian is constant, so the RK4 map on vec(rho) is a fixed matrix
  // and can be composed by powering, exactly as for the no-jump evolution.
  const CMatrix sup = kI * liouvillian(h_sys.entries(), jumps, ldl);  // d vec/dt = -i (i L) vec
  const CVector vec0 = Eigen::Map<const CVector>(rho0.entries().data(), d * d);
  CVector prev = rk4_propagator_for(sup, duration, n_steps) * vec0;
  for (int halving = 1; halving <= opts.max_halvings; ++halving) {
    n_steps *= 2;
    CVector cur = rk4_propagator_for(sup, duration, n_steps) * vec0;
    if ((cur - prev).cwiseAbs().maxCoeff() < opts.amplitude_tolerance) {
      return DensityMatrix(rho0.dims(), Eigen::Map<const CMatrix>(cur.data(), d, d));
    }
    prev = std::move(cur);
  }
  throw ConvergenceError("lindblad_reference: step refinement did not converge");
}

}  // namespace cavitybell
