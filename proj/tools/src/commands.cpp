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

#include "cavitybell_cli/commands.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

namespace cavitybell::cli {

namespace {

using nlohmann::json;
using Row = std::vector<double>;

int worker_count(const RunConfig& c, std::size_t tasks) {
  int n = c.jobs > 0 ? c.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(n), std::max<std::size_t>(tasks, 1)));
}

// Rows come back in task order whatever the scheduling.
std::vector<Row> run_pool(std::size_t tasks, int workers, const std::function<Row(std::size_t)>& task) {
  std::vector<Row> rows(tasks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_lock;
  auto body = [&] {
    for (std::size_t i; (i = next++) < tasks;) {
      try {
        rows[i] = task(i);
      } catch (...) {
        std::lock_guard<std::mutex> g(error_lock);
        if (!error) error = std::current_exception();
        next = tasks;
      }
    }
  };
  if (workers <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return rows;
}

std::string render_table(const RunConfig& c, const std::vector<std::string>& header, const std::vector<Row>& rows) {
  if (c.format == OutputFormat::json) {
    json j;
    j["columns"] = header;
    j["rows"] = rows;
    return j.dump(2) + "\n";
  }
  if (c.format == OutputFormat::text) throw ConfigError("run.format: datasets are written as csv or json");
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += "\n";
  for (const Row& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ",";
      out += format_real(r[i]);
    }
    out += "\n";
  }
  return out;
}

std::vector<double> axis_or(const RunConfig& c, const std::string& name, std::vector<double> fallback) {
  const SweepAxis* a = c.axis(name);
  return a ? a->values : fallback;
}

std::vector<double> log_grid(double lo, double hi, int n) { return parse_axis("default", fmt::format("{}:{}:{}:log", lo, hi, n)); }

void require_axes(const RunConfig& c, std::initializer_list<const char*> allowed, const char* command) {
  for (const auto& a : c.sweep) {
    bool ok = false;
    for (const char* name : allowed) ok = ok || a.name == name;
    if (!ok) throw ConfigError("sweep." + a.name + ": not a parameter of " + command);
  }
}

Complex unit_phase(Complex z) { return std::abs(z) > 0.0 ? z / std::abs(z) : Complex{1.0, 0.0}; }

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json regime_json(const RegimeReport& r) {
  json checks = json::array();
  for (const auto& k : r.checks) {
    checks.push_back({{"name", k.name},
                      {"group", k.group},
                      {"relation", to_string(k.relation)},
                      {"ratio", k.ratio},
                      {"factor", k.factor},
                      {"verdict", to_string(k.verdict)}});
  }
  return {{"all_pass", r.all_pass()}, {"checks", checks}};
}

json two_level_json(const TwoLevelParams& p) {
  return {{"g", p.g}, {"kappa", p.kappa}, {"gamma", p.gamma}, {"omega1", complex_json(p.omega1)},
          {"omega2", complex_json(p.omega2)}};
}

json four_level_json(const FourLevelParams& p) {
  return {{"g", p.g},
          {"kappa", p.kappa},
          {"gamma2", p.gamma2},
          {"gamma3", p.gamma3},
          {"delta2", p.delta2},
          {"delta3", p.delta3},
          {"omega0", complex_json(p.omega0)},
          {"omega1", complex_json(p.omega1)},
          {"omega_i1", complex_json(p.omega_i[0])},
          {"omega_i2", complex_json(p.omega_i[1])}};
}

json estimate_json(const CorrelationEstimate& e, double angle) {
  return {{"vartheta", angle},   {"e_hat", e.e_hat}, {"std_err", e.std_err},
          {"n_runs", e.n_runs}, {"n_discarded", e.n_discarded}};
}

}  // namespace

std::string format_real(double v) { return fmt::format("{:.17g}", v); }

CommandResult cmd_fig2(const RunConfig& c) {
  if (c.model_given && c.model != Model::two_level) throw ConfigError("run.model: fig2 needs the two-level model");
  require_axes(c, {"omega1", "gamma", "kappa"}, "fig2");
  const double g = c.two_level.g;
  const std::vector<double> om = axis_or(c, "omega1", log_grid(1e-3, 1e-1, 9));
  const std::vector<double> ga = axis_or(c, "gamma", {0.0, 1e-3, 1e-2, 1e-1});
  const std::vector<double> ka = axis_or(c, "kappa", {c.two_level.kappa / g});
  const Complex phase = unit_phase(c.two_level.omega1);

  const std::size_t n = om.size() * ga.size() * ka.size();
  auto task = [&](std::size_t k) -> Row {
    const std::size_t i = k / (ga.size() * ka.size());
    const std::size_t j = (k / ka.size()) % ga.size();
    const std::size_t l = k % ka.size();
    TwoLevelParams p = c.two_level;
    p.omega1 = om[i] * g * phase;
    p.omega2 = -p.omega1;
    p.gamma = ga[j] * g;
    p.kappa = ka[l] * g;
    const double t = std::numbers::pi / std::abs(p.omega_minus());
    const PreparationResult r = prepare_two_level(p, PulseSpec::of_duration(t), c.preparation);
    return {om[i], ga[j], ka[l], r.p0, r.fidelity, std::abs(r.alpha_realized)};
  };
  const auto rows = run_pool(n, worker_count(c, n), task);
  return {render_table(c, {"omega1_over_g", "gamma_over_g", "kappa_over_g", "p0", "fidelity", "alpha_abs"}, rows)};
}

CommandResult cmd_fig6(const RunConfig& c) {
  if (c.model_given && c.model != Model::four_level) throw ConfigError("run.model: fig6 needs the four-level model");
  require_axes(c, {"omega_drive", "gamma"}, "fig6");
  const double g = c.four_level.g;
  const std::vector<double> dr = axis_or(c, "omega_drive", log_grid(1e-3, 1e-1, 9));
  const std::vector<double> ga = axis_or(c, "gamma", {0.0, 0.1, 1.0});
  const Complex phase = unit_phase(c.four_level.omega_i[0]);

  const std::size_t n = dr.size() * ga.size();
  auto task = [&](std::size_t k) -> Row {
    const std::size_t i = k / ga.size();
    const std::size_t j = k % ga.size();
    FourLevelParams p = c.four_level;
    p.omega_i[0] = dr[i] * g * phase;
    p.omega_i[1] = -p.omega_i[0];
    p.gamma2 = p.gamma3 = ga[j] * g;
    const PreparationResult r = prepare_four_level(p, c.preparation);
    return {dr[i], ga[j], r.p0, r.fidelity};
  };
  const auto rows = run_pool(n, worker_count(c, n), task);
  return {render_table(c, {"omega_drive_over_g", "gamma_over_g", "p0", "fidelity"}, rows)};
}

CommandResult cmd_bell_surface(const RunConfig& c) {
  const BellScanResult s = bell_surface(c.bell);
  std::vector<Row> rows;
  rows.reserve(s.values.size());
  for (std::size_t i = 0; i < s.omega_minus_t.size(); ++i)
    for (std::size_t j = 0; j < s.vartheta.size(); ++j) rows.push_back({s.omega_minus_t[i], s.vartheta[j], s.at(i, j)});
  return {render_table(c, {"omega_minus_T", "vartheta", "b_s"}, rows)};
}

CommandResult cmd_pipeline(const RunConfig& c) {
  if (c.format == OutputFormat::csv || c.format == OutputFormat::text)
    throw ConfigError("run.format: the pipeline report is json");
  const PipelineConfig& pc = c.pipeline;

  PreparedSource src;
  json params;
  double fidelity = 1.0;
  if (pc.mode == PipelineMode::inject) {
    src = source_from_alpha(pc.alpha, pc.forced_p0.value_or(1.0));
    params = {{"alpha", complex_json(pc.alpha)}};
  } else {
    PipelineSetup setup;
    setup.model = c.model;
    setup.two_level = c.two_level;
    setup.four_level = c.four_level;
    setup.preparation = c.preparation;
    if (c.model == Model::two_level) {
      const double w = std::abs(c.two_level.omega_minus());
      if (w == 0.0) throw ConfigError("two_level.omega1: Omega_minus vanishes, nothing to prepare");
      const PreparationResult r = prepare_two_level(c.two_level, PulseSpec::of_duration(std::numbers::pi / w), c.preparation);
      src = source_from_preparation(r);
      fidelity = r.fidelity;
      params = two_level_json(c.two_level);
    } else {
      const PreparationResult r = prepare_four_level(c.four_level, c.preparation);
      src = source_from_preparation(r);
      fidelity = r.fidelity;
      params = four_level_json(c.four_level);
    }
    if (pc.forced_p0) src.p0 = *pc.forced_p0;
  }

  const int jobs = c.jobs > 0 ? c.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const BellEstimate b = estimate_bell(src, pc.vartheta, pc.n_runs, c.seed, pc.failure_policy, jobs);

  json report;
  report["schema"] = kPipelineSchema;
  report["model"] = pc.mode == PipelineMode::inject ? "injected" : to_string(c.model);
  report["params"] = params;
  report["failure_policy"] = to_string(pc.failure_policy);
  report["seed"] = c.seed;
  report["n_runs_per_e"] = pc.n_runs;
  report["p0"] = src.p0;
  report["alpha_realized"] = complex_json(src.alpha_realized);
  report["fidelity"] = fidelity;
  report["e_hat"] = json::array({estimate_json(b.e_vartheta, pc.vartheta), estimate_json(b.e_3vartheta, 3.0 * pc.vartheta)});
  report["b_hat"] = b.b_hat;
  report["std_err"] = b.std_err;
  report["n_discarded"] = b.e_vartheta.n_discarded + b.e_3vartheta.n_discarded;
  report["b_expected"] = observed_bell_with_failures(
      pc.failure_policy == FailurePolicy::discard ? 1.0 : src.p0,
      std::abs(3.0 * correlation_expectation(src.atoms, pc.vartheta, 0.0) -
               correlation_expectation(src.atoms, 3.0 * pc.vartheta, 0.0)));
  return {report.dump(2) + "\n"};
}

CommandResult cmd_validate(const RunConfig& c) {
  RegimeReport r = c.model == Model::two_level ? validate_regime(c.two_level, c.preparation.thresholds)
                                               : validate_regime(c.four_level, c.preparation.thresholds);
  if (c.shelving_given) {
    const RegimeReport s = validate_shelving(c.shelving, c.preparation.thresholds);
    r.checks.insert(r.checks.end(), s.checks.begin(), s.checks.end());
  }
  CommandResult out;
  out.exit_code = r.all_pass() ? exit_ok : exit_regime;
  if (c.format == OutputFormat::json) {
    json j = regime_json(r);
    j["model"] = to_string(c.model);
    out.output = j.dump(2) + "\n";
  } else if (c.format == OutputFormat::csv) {
    throw ConfigError("run.format: the regime report is text or json");
  } else {
    out.output = r.to_text();
  }
  return out;
}

}  // namespace cavitybell::cli
