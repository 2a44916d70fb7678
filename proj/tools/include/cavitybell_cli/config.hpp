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
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cavitybell/montecarlo.hpp"
#include "cavitybell/protocols.hpp"
#include "cavitybell/regime.hpp"

namespace cavitybell::cli {

/// Raised for anything wrong with the configuration; the message names the key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json, text };

struct SweepAxis {
  std::string name;
  std::vector<double> values;  ///< expanded grid, in order
};

enum class PipelineMode { simulate, inject };

struct PipelineConfig {
  PipelineMode mode = PipelineMode::simulate;
  Complex alpha{0.0, -1.0};          ///< injected state (inject mode)
  std::optional<double> forced_p0;  ///< overrides the simulated/injected success probability
  FailurePolicy failure_policy = FailurePolicy::discard;
  double vartheta = 0.7853981633974483;
  std::int64_t n_runs = 100000;
};

struct RunConfig {
  Model model = Model::two_level;
  bool model_given = false;
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::optional<std::string> out;
  std::optional<OutputFormat> format;
  int jobs = 0;  ///< 0 = available parallelism

  TwoLevelParams two_level{1.0, 1.0, 0.0, {0.01, 0.0}, {-0.01, 0.0}};  ///< a point on the fig2 grid
  FourLevelParams four_level{};
  PreparationOptions preparation{};
  std::vector<SweepAxis> sweep;  ///< as given in [sweep]; defaults are filled per command
  BellGridSpec bell{};
  PipelineConfig pipeline{};
  ShelvingParams shelving{};
  bool shelving_given = false;

  [[nodiscard]] const SweepAxis* axis(const std::string& name) const;
};

/// "section.key" -> raw value, in the order encountered.
using RawConfig = std::vector<std::pair<std::string, std::string>>;

RawConfig read_ini(std::istream& in);
RawConfig read_ini_file(const std::string& path);
/// Parses "section.key=value".
std::pair<std::string, std::string> parse_override(const std::string& text);

/// Builds a config from raw entries (later entries win). Throws ConfigError.
RunConfig build_config(const RawConfig& raw);

// value parsers, exposed for tests
double parse_real(const std::string& key, const std::string& text);
Complex parse_complex(const std::string& key, const std::string& text);
std::int64_t parse_integer(const std::string& key, const std::string& text);
/// "min:max:points:scale" (scale linear|log) or a comma-separated list.
std::vector<double> parse_axis(const std::string& key, const std::string& text);

}  // namespace cavitybell::cli
