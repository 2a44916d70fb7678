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

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "cavitybell_cli/commands.hpp"

namespace cavitybell::cli {

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::optional<std::int64_t> seed;
  std::optional<int> jobs;
  std::vector<std::string> sets;
};

RunConfig load(const Flags& f) {
  RawConfig raw;
  if (!f.config.empty()) raw = read_ini_file(f.config);
  for (const auto& s : f.sets) raw.push_back(parse_override(s));
  RunConfig c = build_config(raw);
  if (f.seed) {
    if (*f.seed < 0) throw ConfigError("--seed: must be >= 0");
    c.seed = static_cast<std::uint64_t>(*f.seed);
  } else if (!c.seed_given) {
    if (const char* env = std::getenv("CAVITYBELL_SEED")) {
      const std::int64_t s = parse_integer("CAVITYBELL_SEED", env);
      if (s < 0) throw ConfigError("CAVITYBELL_SEED: must be >= 0");
      c.seed = static_cast<std::uint64_t>(s);
    }
  }
  if (f.jobs) {
    if (*f.jobs < 0) throw ConfigError("--jobs: must be >= 0");
    c.jobs = *f.jobs;
  }
  if (!f.out.empty()) c.out = f.out;
  return c;
}

void emit(const RunConfig& c, const std::string& text) {
  if (!c.out || c.out->empty() || *c.out == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(*c.out, std::ios::binary);
  if (!f) throw ConfigError("--out: cannot write '" + *c.out + "'");
  f << text;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"cavitybell: entanglement preparation in a leaky cavity and a spin Bell test"};
  app.require_subcommand(1, 1);
  Flags flags;
  auto add_common = [&flags](CLI::App* sub) {
    sub->add_option("--config", flags.config, "INI configuration file");
    sub->add_option("--out", flags.out, "output path (stdout if omitted)");
    sub->add_option("--seed", flags.seed, "master seed (falls back to CAVITYBELL_SEED)");
    sub->add_option("--jobs", flags.jobs, "worker threads (0 = available parallelism)");
    sub->add_option("--set", flags.sets, "override, section.key=value (repeatable)");
  };
  using Command = CommandResult (*)(const RunConfig&);
  const std::vector<std::tuple<const char*, const char*, Command>> commands{
      {"fig2", "two-level preparation sweep (CSV)", cmd_fig2},
      {"fig6", "four-level preparation sweep (CSV)", cmd_fig6},
      {"bell-surface", "B_S over |Omega_minus| T and vartheta (CSV)", cmd_bell_surface},
      {"pipeline", "simulated Bell experiment (JSON report)", cmd_pipeline},
      {"validate", "parameter regime report", cmd_validate},
  };
  Command chosen = nullptr;
  for (const auto& [name, help, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub);
    sub->callback([&chosen, f = fn] { chosen = f; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_config;
  }

  try {
    const RunConfig c = load(flags);
    const CommandResult r = chosen(c);
    emit(c, r.output);
    return r.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const ConvergenceError& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return exit_convergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return exit_config;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return exit_config;
  }
}

}  // namespace cavitybell::cli
