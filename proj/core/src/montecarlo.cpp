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

#include "cavitybell/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

namespace cavitybell {

namespace {

constexpr double pi = std::numbers::pi;

struct Tally {
  std::int64_t sum = 0;        // sum of sigma_z products
  std::int64_t nonzero = 0;    // runs contributing +-1 (sum of squares)
  std::int64_t discarded = 0;
};

StateVector rotated_pair(const StateVector& atoms, double vartheta) {
  const OperatorMatrix u = kron_qubits(rotation_operator({pi / 4.0, 1.5 * pi - vartheta}),
                                       rotation_operator({pi / 4.0, 1.5 * pi}));
  return u.apply(atoms);
}

int sigma_z_value(ShelvingOutcome o) { return o == ShelvingOutcome::emits ? -1 : 1; }

// Sequential conditional readout: atom 1 from its marginal, atom 2 from the
// branch selected by atom 1's outcome.
int measure_pair(const std::array<double, 4>& p, RandomStream& rng) {
  const double p1_0 = p[0] + p[1];
  const double p1_1 = p[2] + p[3];
  const ShelvingOutcome o1 = shelving_measure(std::sqrt(p1_0), std::sqrt(p1_1), rng);
  const int j1 = o1 == ShelvingOutcome::emits ? 0 : 1;
  const double branch = j1 == 0 ? p1_0 : p1_1;
  const double q0 = p[static_cast<std::size_t>(2 * j1)] / branch;
  const ShelvingOutcome o2 = shelving_measure(std::sqrt(q0), std::sqrt(std::max(0.0, 1.0 - q0)), rng);
  return sigma_z_value(o1) * sigma_z_value(o2);
}

void run_range(Tally& t, const std::array<double, 4>& probs, double p0, FailurePolicy policy, std::int64_t begin,
               std::int64_t end, std::uint64_t seed, std::uint64_t tag) {
  for (std::int64_t r = begin; r < end; ++r) {
    RandomStream rng(seed, static_cast<std::uint64_t>(r), tag);
    if (!rng.bernoulli(p0)) {
      if (policy == FailurePolicy::discard) ++t.discarded;
      continue;  // include_as_zero: counts as a run with product 0
    }
    t.sum += measure_pair(probs, rng);
    ++t.nonzero;
  }
}

}  // namespace

const char* to_string(Model m) { return m == Model::two_level ? "two-level" : "four-level"; }
const char* to_string(FailurePolicy f) { return f == FailurePolicy::discard ? "discard" : "include_as_zero"; }

PreparedSource source_from_alpha(Complex alpha, double p0) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw std::invalid_argument("source_from_alpha: p0 must lie in [0, 1]");
  PreparedSource s;
  s.atoms = target_state(alpha, qubit_pair_dims());
  s.p0 = p0;
  s.alpha_realized = alpha;
  return s;
}

PreparedSource source_from_preparation(const PreparationResult& prep) {
  PreparedSource s;
  s.p0 = prep.p0;
  s.alpha_realized = prep.alpha_realized;
  s.atoms = prep.p0 > 0.0 ? prep.atom_qubits() : target_state(Complex{}, qubit_pair_dims());
  return s;
}

PreparedSource prepare_source(const PipelineSetup& setup) {
  if (setup.model == Model::two_level) {
    const double w = std::abs(setup.two_level.omega_minus());
    if (w == 0.0) throw std::invalid_argument("pipeline: Omega_minus is zero, nothing to prepare");
    return source_from_preparation(prepare_two_level(setup.two_level, PulseSpec::of_duration(pi / w), setup.preparation));
  }
  return source_from_preparation(prepare_four_level(setup.four_level, setup.preparation));
}

std::array<double, 4> measurement_probabilities(const StateVector& atoms, double vartheta) {
  if (atoms.dims().n_max != 0 || atoms.dims().atom_levels != 2 || atoms.dims().n_atoms != 2)
    throw std::invalid_argument("measurement_probabilities: expected a two-qubit state");
  const StateVector r = rotated_pair(atoms.normalized(), vartheta);
  std::array<double, 4> p{};
  for (int k = 0; k < 4; ++k) p[static_cast<std::size_t>(k)] = std::norm(r[k]);
  const double total = p[0] + p[1] + p[2] + p[3];
  for (double& v : p) v /= total;
  return p;
}

CorrelationEstimate estimate_correlation(const PreparedSource& source, double vartheta, std::int64_t n_runs,
                                         std::uint64_t seed, FailurePolicy policy, int jobs, std::string_view stage) {
  if (n_runs < 1) throw std::invalid_argument("estimate_correlation: n_runs must be >= 1");
  const std::array<double, 4> probs = measurement_probabilities(source.atoms, vartheta);
  const std::uint64_t tag = stage_tag(stage);
  const int workers = static_cast<int>(std::clamp<std::int64_t>(jobs, 1, n_runs));

  std::vector<Tally> tallies(static_cast<std::size_t>(workers));
  if (workers == 1) {
    run_range(tallies[0], probs, source.p0, policy, 0, n_runs, seed, tag);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      const std::int64_t b = n_runs * w / workers;
      const std::int64_t e = n_runs * (w + 1) / workers;
      pool.emplace_back(run_range, std::ref(tallies[static_cast<std::size_t>(w)]), std::cref(probs), source.p0,
                        policy, b, e, seed, tag);
    }
    for (auto& t : pool) t.join();
  }

  Tally total;
  for (const Tally& t : tallies) {
    total.sum += t.sum;
    total.nonzero += t.nonzero;
    total.discarded += t.discarded;
  }
  CorrelationEstimate est;
  est.n_runs = n_runs;
  est.n_discarded = total.discarded;
  const std::int64_t n = est.n_used();
  if (n == 0) return est;
  const double dn = static_cast<double>(n);
  est.e_hat = static_cast<double>(total.sum) / dn;
  if (n > 1) {
    // products are in {-1, 0, 1}, so sum of squares = nonzero count
    const double var = (static_cast<double>(total.nonzero) - dn * est.e_hat * est.e_hat) / (dn - 1.0);
    est.std_err = std::sqrt(std::max(0.0, var) / dn);
  }
  return est;
}

CorrelationEstimate estimate_correlation(const PipelineSetup& setup, double vartheta, std::int64_t n_runs,
                                         std::uint64_t seed, FailurePolicy policy, int jobs) {
  if (n_runs < 1) throw std::invalid_argument("estimate_correlation: n_runs must be >= 1");
  return estimate_correlation(prepare_source(setup), vartheta, n_runs, seed, policy, jobs);
}

BellEstimate estimate_bell(const PreparedSource& source, double vartheta, std::int64_t n_runs_per_e,
                           std::uint64_t seed, FailurePolicy policy, int jobs) {
  BellEstimate b;
  b.e_vartheta = estimate_correlation(source, vartheta, n_runs_per_e, seed, policy, jobs, "bell/E(vartheta)");
  b.e_3vartheta = estimate_correlation(source, 3.0 * vartheta, n_runs_per_e, seed, policy, jobs, "bell/E(3vartheta)");
  b.b_hat = std::abs(3.0 * b.e_vartheta.e_hat - b.e_3vartheta.e_hat);
  b.std_err = std::sqrt(9.0 * b.e_vartheta.std_err * b.e_vartheta.std_err + b.e_3vartheta.std_err * b.e_3vartheta.std_err);
  return b;
}

BellEstimate estimate_bell(const PipelineSetup& setup, double vartheta, std::int64_t n_runs_per_e, std::uint64_t seed,
                           FailurePolicy policy, int jobs) {
  if (n_runs_per_e < 1) throw std::invalid_argument("estimate_bell: n_runs_per_e must be >= 1");
  return estimate_bell(prepare_source(setup), vartheta, n_runs_per_e, seed, policy, jobs);
}

}  // namespace cavitybell
