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

#include "cavitybell/trajectory.hpp"

#include <algorithm>
#include <cmath>

namespace cavitybell {

void check_jump_consistency(const OperatorMatrix& h_cond, const std::vector<JumpChannel>& jumps, double tolerance) {
  const CMatrix& h = h_cond.entries();
  CMatrix expected = CMatrix::Zero(h.rows(), h.cols());
  for (const auto& j : jumps) {
    if (!(j.op.dims() == h_cond.dims())) throw std::invalid_argument("trajectory: jump dimension mismatch");
    if (!(j.rate >= 0.0)) throw std::invalid_argument("trajectory: negative rate for channel '" + j.label + "'");
    expected -= 0.5 * j.rate * j.op.entries().adjoint() * j.op.entries();
  }
  const CMatrix anti = (h - h.adjoint()) / (2.0 * kI);
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((anti - expected).cwiseAbs().maxCoeff() > tolerance * scale) {
    throw std::invalid_argument("trajectory: conditional Hamiltonian is inconsistent with the jump channels");
  }
}

TrajectorySimulator::TrajectorySimulator(OperatorMatrix h_cond, std::vector<JumpChannel> jumps, double duration,
                                         TrajectoryOptions opts)
    : h_(std::move(h_cond)), jumps_(std::move(jumps)), duration_(duration), opts_(opts) {
  if (!(duration_ >= 0.0) || !std::isfinite(duration_)) throw std::invalid_argument("trajectory: bad duration");
  if (!h_.all_finite()) throw std::invalid_argument("trajectory: non-finite Hamiltonian");
  check_jump_consistency(h_, jumps_, opts_.consistency_tolerance);

  const double omega_max = frequency_bound(h_.entries());
  if (duration_ > 0.0) {
    const double base = omega_max > 0.0 ? std::min(opts_.step_scale / omega_max, duration_ / opts_.min_steps)
                                        : duration_ / opts_.min_steps;
    n_steps_ = static_cast<std::int64_t>(std::ceil(duration_ / base));
    step_ = duration_ / static_cast<double>(n_steps_);
  }
  step_propagator_ = rk4_propagator(h_.entries(), step_, 1);
}

CVector TrajectorySimulator::propagate(const CVector& psi, double tau) const {
  if (tau <= 0.0) return psi;
  return rk4_propagator(h_.entries(), tau, 1) * psi;
}

TrajectoryRecord TrajectorySimulator::run(const StateVector& psi0, RandomStream& rng) const {
  if (!(psi0.dims() == h_.dims())) throw std::invalid_argument("trajectory: initial state dimension mismatch");
  TrajectoryRecord rec{psi0.normalized(), {}, true};
  CVector psi = rec.final_state.amps();
  double threshold = rng.uniform();
  double t = 0.0;

  bool on_grid = true;
  for (std::int64_t s = 0; s < n_steps_;) {
    const double grid_end = static_cast<double>(s + 1) * step_;
    const double span = on_grid ? step_ : grid_end - t;
    CVector next = on_grid ? CVector(step_propagator_ * psi) : propagate(psi, span);
    if (next.squaredNorm() > threshold) {
      psi = std::move(next);
      t = grid_end;
      on_grid = true;
      ++s;
      continue;
    }
    // The jump lies inside (t, t + span]; bisect on the squared norm.
    double lo = 0.0;
    double hi = span;
    for (int it = 0; it < opts_.bisection_iterations; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (propagate(psi, mid).squaredNorm() > threshold) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const CVector at_jump = propagate(psi, hi);

    std::vector<double> weights;
    weights.reserve(jumps_.size());
    double total = 0.0;
    for (const auto& j : jumps_) {
      weights.push_back(j.rate * (j.op.entries() * at_jump).squaredNorm());
      total += weights.back();
    }
    if (!(total > 0.0)) throw std::logic_error("trajectory: norm decayed with no active jump channel");
    double pick = rng.uniform() * total;
    std::size_t k = 0;
    while (k + 1 < weights.size() && pick >= weights[k]) pick -= weights[k++];

    const CVector jumped = jumps_[k].op.entries() * at_jump;
    psi = jumped / jumped.norm();
    t += hi;
    rec.jumps.push_back({t, static_cast<int>(k)});
    threshold = rng.uniform();
    on_grid = false;
  }

  rec.survived = rec.jumps.empty();
  const double nrm = psi.norm();
  rec.final_state = StateVector(psi0.dims(), nrm > 0.0 ? CVector(psi / nrm) : psi);
  return rec;
}

TrajectoryRecord trajectory_run(const OperatorMatrix& h_cond, const std::vector<JumpChannel>& jumps,
                                const StateVector& psi0, double duration, std::uint64_t seed,
                                const TrajectoryOptions& opts) {
  TrajectorySimulator sim(h_cond, jumps, duration, opts);
  RandomStream rng(seed);
  return sim.run(psi0, rng);
}

PopulationAverage average_populations(const std::vector<TrajectoryRecord>& records) {
  PopulationAverage out;
  if (records.empty()) return out;
  const auto dim = static_cast<std::size_t>(records.front().final_state.size());
  std::vector<double> sum(dim, 0.0);
  std::vector<double> sum_sq(dim, 0.0);
  for (const auto& r : records) {
    for (std::size_t i = 0; i < dim; ++i) {
      const double p = std::norm(r.final_state[static_cast<int>(i)]);
      sum[i] += p;
      sum_sq[i] += p * p;
    }
  }
  const auto n = static_cast<double>(records.size());
  out.mean.resize(dim);
  out.std_err.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    out.mean[i] = sum[i] / n;
    const double var = n > 1.0 ? std::max(0.0, (sum_sq[i] - n * out.mean[i] * out.mean[i]) / (n - 1.0)) : 0.0;
    out.std_err[i] = std::sqrt(var / n);
  }
  return out;
}

}  // namespace cavitybell
