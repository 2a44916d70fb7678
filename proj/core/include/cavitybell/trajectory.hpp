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
#include <vector>

#include "cavitybell/quantum_core.hpp"
#include "cavitybell/rng.hpp"

namespace cavitybell {

struct JumpEvent {
  double time = 0.0;
  int channel = 0;
};

struct TrajectoryRecord {
  StateVector final_state;  ///< normalized state at the end of the window
  std::vector<JumpEvent> jumps;
  bool survived = true;  ///< no jump occurred
};

struct TrajectoryOptions {
  double step_scale = 1e-2;  ///< step = min(step_scale / omega_max, T / min_steps)
  double min_steps = 1000.0;
  int bisection_iterations = 48;
  double consistency_tolerance = 1e-10;
};

/// Throws std::invalid_argument unless (H - H^dag)/(2i) == -1/2 sum rate L^dag L.
void check_jump_consistency(const OperatorMatrix& h_cond, const std::vector<JumpChannel>& jumps,
                            double tolerance = 1e-10);

/**
 * Waiting-time unraveling of a master equation. Between jumps the state
 * follows exp(-i H_cond t) unnormalized; a jump fires when the squared norm
 * falls below a uniform draw, the time is located by bisection, the channel
 * is picked with weight rate * |L psi|^2, and the normalized L psi restarts
 * the clock with a fresh draw.
 */
class TrajectorySimulator {
 public:
  TrajectorySimulator(OperatorMatrix h_cond, std::vector<JumpChannel> jumps, double duration,
                      TrajectoryOptions opts = {});

  [[nodiscard]] TrajectoryRecord run(const StateVector& psi0, RandomStream& rng) const;
  [[nodiscard]] double step() const { return step_; }

 private:
  [[nodiscard]] CVector propagate(const CVector& psi, double tau) const;

  OperatorMatrix h_;
  std::vector<JumpChannel> jumps_;
  double duration_;
  TrajectoryOptions opts_;
  double step_ = 0.0;
  std::int64_t n_steps_ = 0;
  CMatrix step_propagator_;
};

TrajectoryRecord trajectory_run(const OperatorMatrix& h_cond, const std::vector<JumpChannel>& jumps,
                                const StateVector& psi0, double duration, std::uint64_t seed,
                                const TrajectoryOptions& opts = {});

/// Mean |psi_i|^2 over the final states, with its standard error per index.
struct PopulationAverage {
  std::vector<double> mean;
  std::vector<double> std_err;
};
PopulationAverage average_populations(const std::vector<TrajectoryRecord>& records);

}  // namespace cavitybell
