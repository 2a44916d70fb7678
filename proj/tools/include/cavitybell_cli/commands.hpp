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

#include <string>
#include <vector>

#include "cavitybell_cli/config.hpp"

namespace cavitybell::cli {

enum ExitCode : int { exit_ok = 0, exit_regime = 1, exit_config = 2, exit_convergence = 3 };

struct CommandResult {
  std::string output;
  int exit_code = exit_ok;
};

inline constexpr const char* kPipelineSchema = "cavitybell.pipeline/1";

/// Two-level preparation sweep; one row per (omega1, gamma, kappa) point.
CommandResult cmd_fig2(const RunConfig& config);
/// Four-level preparation sweep over the weak drive and Gamma2 = Gamma3.
CommandResult cmd_fig6(const RunConfig& config);
CommandResult cmd_bell_surface(const RunConfig& config);
CommandResult cmd_pipeline(const RunConfig& config);
CommandResult cmd_validate(const RunConfig& config);

/// Full command-line entry: parses flags, loads config, dispatches, writes output.
int run_cli(int argc, const char* const* argv);

/// %.17g
std::string format_real(double v);

}  // namespace cavitybell::cli
