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
#include <string_view>

#include "cavitybell/bell_analysis.hpp"
#include "cavitybell/protocols.hpp"
#include "cavitybell/trajectory.hpp"

namespace cavitybell {

enum class Model { two_level, four_level };
enum class FailurePolicy { discard, include_as_zero };

const char* to_string(Model m);
const char* to_string(FailurePolicy f);

/// The atom-pair state handed to the measurement stage, and how often it is obtained.
struct PreparedSource {
  StateVector atoms = StateVector(qubit_pair_dims());  ///< normalized two-qubit state
  double p0 = 1.0;                                     ///< preparation success probability
  Complex alpha_realized{};
};

/// Inject alpha |a> + sqrt(1 - |alpha|^2) |00> directly, succeeding with probability p0.
PreparedSource source_from_alpha(Complex alpha, double p0 = 1.0);
PreparedSource source_from_preparation(const PreparationResult& prep);

struct PipelineSetup {
  Model model = Model::two_level;
  TwoLevelParams two_level{};
  FourLevelParams four_level{};
  PreparationOptions preparation{};
};

/// Runs the conditional evolution once (T chosen for the maximally entangled state).
PreparedSource prepare_source(const PipelineSetup& setup);

struct CorrelationEstimate {
  double e_hat = 0.0;
  double std_err = 0.0;
  std::int64_t n_runs = 0;
  std::int64_t n_discarded = 0;
  [[nodiscard]] std::int64_t n_used() const { return n_runs - n_discarded; }
};

/**
 * Monte-Carlo estimate of E(vartheta, 0): per run, draw preparation success
 * with probability p0, rotate atom 1 by U(pi/4, 3pi/2 - vartheta) and atom 2
 * by U(pi/4, 3pi/2), shelve atom 1 then atom 2 (conditional on atom 1's
 * outcome) and record the product of the sigma_z values. Run r draws from
 * RandomStream(seed, r, stage_tag(stage)); sums are integer so the result
 * does not depend on `jobs`.
 */
CorrelationEstimate estimate_correlation(const PreparedSource& source, double vartheta, std::int64_t n_runs,
                                         std::uint64_t seed, FailurePolicy policy, int jobs = 1,
                                         std::string_view stage = "correlation");
CorrelationEstimate estimate_correlation(const PipelineSetup& setup, double vartheta, std::int64_t n_runs,
                                         std::uint64_t seed, FailurePolicy policy, int jobs = 1);

struct BellEstimate {
  double b_hat = 0.0;
  double std_err = 0.0;
  CorrelationEstimate e_vartheta;
  CorrelationEstimate e_3vartheta;
};

/// |3 E(vartheta) - E(3 vartheta)| from two independent estimates; errors added in quadrature.
BellEstimate estimate_bell(const PreparedSource& source, double vartheta, std::int64_t n_runs_per_e,
                           std::uint64_t seed, FailurePolicy policy, int jobs = 1);
BellEstimate estimate_bell(const PipelineSetup& setup, double vartheta, std::int64_t n_runs_per_e, std::uint64_t seed,
                           FailurePolicy policy, int jobs = 1);

/// Born-rule probabilities p(j1, j2) of the rotated state that estimate_correlation samples.
std::array<double, 4> measurement_probabilities(const StateVector& atoms, double vartheta);

}  // namespace cavitybell
