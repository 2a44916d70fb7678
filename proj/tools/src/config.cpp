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

#include "cavitybell_cli/config.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

namespace cavitybell::cli {

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& what) { throw ConfigError(key + ": " + what); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  fail(key, "expected a boolean, got '" + text + "'");
}

int parse_int(const std::string& key, const std::string& text) {
  const std::int64_t v = parse_integer(key, text);
  if (v < INT32_MIN || v > INT32_MAX) fail(key, "value out of range");
  return static_cast<int>(v);
}

double positive(const std::string& key, double v) {
  if (!(v > 0.0)) fail(key, "must be > 0");
  return v;
}

double non_negative(const std::string& key, double v) {
  if (!(v >= 0.0)) fail(key, "must be >= 0");
  return v;
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

std::map<std::string, Setter> setters() {
  std::map<std::string, Setter> s;

  s["run.model"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    const std::string t = trim(v);
    if (t == "two-level") c.model = Model::two_level;
    else if (t == "four-level") c.model = Model::four_level;
    else fail(k, "expected two-level or four-level, got '" + v + "'");
    c.model_given = true;
  };
  s["run.seed"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    const std::int64_t n = parse_integer(k, v);
    if (n < 0) fail(k, "seed must be >= 0");
    c.seed = static_cast<std::uint64_t>(n);
    c.seed_given = true;
  };
  s["run.out"] = [](RunConfig& c, const std::string&, const std::string& v) { c.out = trim(v); };
  s["run.format"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    const std::string t = trim(v);
    if (t == "csv") c.format = OutputFormat::csv;
    else if (t == "json") c.format = OutputFormat::json;
    else if (t == "text") c.format = OutputFormat::text;
    else fail(k, "expected csv, json or text, got '" + v + "'");
  };
  s["run.jobs"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.jobs = parse_int(k, v);
    if (c.jobs < 0) fail(k, "must be >= 0");
  };
  s["run.n_max"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.preparation.n_max = parse_int(k, v);
    if (c.preparation.n_max < 1) fail(k, "must be >= 1");
  };
  s["run.n_max_limit"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.preparation.n_max_limit = parse_int(k, v);
    if (c.preparation.n_max_limit < 1) fail(k, "must be >= 1");
  };
  s["run.truncation_tolerance"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.preparation.truncation_tolerance = positive(k, parse_real(k, v));
  };
  s["run.step_scale"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.preparation.integrator.step_scale = positive(k, parse_real(k, v));
  };

  s["two_level.g"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.two_level.g = positive(k, parse_real(k, v)); };
  s["two_level.kappa"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.two_level.kappa = non_negative(k, parse_real(k, v)); };
  s["two_level.gamma"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.two_level.gamma = non_negative(k, parse_real(k, v)); };
  s["two_level.omega1"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.two_level.omega1 = parse_complex(k, v); };
  s["two_level.omega2"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.two_level.omega2 = parse_complex(k, v); };

  s["four_level.g"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.four_level.g = positive(k, parse_real(k, v)); };
  s["four_level.kappa"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.four_level.kappa = non_negative(k, parse_real(k, v)); };
  s["four_level.gamma2"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.four_level.gamma2 = non_negative(k, parse_real(k, v)); };
  s["four_level.gamma3"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.four_level.gamma3 = non_negative(k, parse_real(k, v)); };
  s["four_level.delta2"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.four_level.delta2 = parse_real(k, v); };
  s["four_level.delta3"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.four_level.delta3 = parse_real(k, v); };
  s["four_level.omega0"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.four_level.omega0 = parse_complex(k, v); };
  s["four_level.omega1"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.four_level.omega1 = parse_complex(k, v); };
  s["four_level.omega_i1"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.four_level.omega_i[0] = parse_complex(k, v); };
  s["four_level.omega_i2"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.four_level.omega_i[1] = parse_complex(k, v); };

  s["bell.omega_minus_t_points"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.bell.omega_minus_t_points = parse_int(k, v);
    if (c.bell.omega_minus_t_points < 2) fail(k, "must be >= 2");
  };
  s["bell.vartheta_points"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.bell.vartheta_points = parse_int(k, v);
    if (c.bell.vartheta_points < 2) fail(k, "must be >= 2");
  };
  s["bell.omega_minus_t_max"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.bell.omega_minus_t_max = positive(k, parse_real(k, v)); };
  s["bell.vartheta_max"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.bell.vartheta_max = positive(k, parse_real(k, v)); };

  s["pipeline.mode"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    const std::string t = trim(v);
    if (t == "simulate") c.pipeline.mode = PipelineMode::simulate;
    else if (t == "inject") c.pipeline.mode = PipelineMode::inject;
    else fail(k, "expected simulate or inject, got '" + v + "'");
  };
  s["pipeline.alpha"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.pipeline.alpha = parse_complex(k, v);
    if (std::abs(c.pipeline.alpha) > 1.0 + 1e-12) fail(k, "|alpha| must be <= 1");
  };
  s["pipeline.p0"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    const double p = parse_real(k, v);
    if (!(p >= 0.0 && p <= 1.0)) fail(k, "must lie in [0, 1]");
    c.pipeline.forced_p0 = p;
  };
  s["pipeline.failure_policy"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    const std::string t = trim(v);
    if (t == "discard") c.pipeline.failure_policy = FailurePolicy::discard;
    else if (t == "include_as_zero") c.pipeline.failure_policy = FailurePolicy::include_as_zero;
    else fail(k, "expected discard or include_as_zero, got '" + v + "'");
  };
  s["pipeline.vartheta"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.pipeline.vartheta = parse_real(k, v); };
  s["pipeline.n_runs"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.pipeline.n_runs = parse_integer(k, v);
    if (c.pipeline.n_runs < 100) fail(k, "must be >= 100");
  };

  s["regime.much_less_factor"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.preparation.thresholds.much_less_factor = positive(k, parse_real(k, v)); };
  s["regime.similar_factor"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.preparation.thresholds.similar_factor = positive(k, parse_real(k, v)); };
  s["regime.equality_tolerance"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.preparation.thresholds.equality_tolerance = positive(k, parse_real(k, v)); };

  s["shelving.omega_probe"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.shelving.omega_probe = positive(k, parse_real(k, v)); c.shelving_given = true; };
  s["shelving.gamma_probe"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.shelving.gamma_probe = positive(k, parse_real(k, v)); c.shelving_given = true; };
  s["shelving.window"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.shelving.window = positive(k, parse_real(k, v)); c.shelving_given = true; };
  return s;
}

const std::set<std::string>& sweep_names() {
  static const std::set<std::string> names{"omega1", "gamma", "kappa", "omega_drive"};
  return names;
}

}  // namespace

const SweepAxis* RunConfig::axis(const std::string& name) const {
  for (const auto& a : sweep)
    if (a.name == name) return &a;
  return nullptr;
}

double parse_real(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  // plain number, or multiples of pi such as "pi", "pi/4", "3pi/4", "0.5*pi"
  static const std::regex pi_form(R"(^([+-]?(?:\d+\.?\d*(?:[eE][+-]?\d+)?)?)\*?pi(?:/(\d+\.?\d*(?:[eE][+-]?\d+)?))?$)");
  std::smatch m;
  if (std::regex_match(t, m, pi_form)) {
    double coeff = 1.0;
    const std::string c = m[1].str();
    if (c == "-") coeff = -1.0;
    else if (!c.empty() && c != "+") coeff = std::stod(c);
    double den = m[2].matched ? std::stod(m[2].str()) : 1.0;
    if (den == 0.0) fail(key, "division by zero in '" + text + "'");
    return coeff * std::numbers::pi / den;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    fail(key, "cannot parse '" + text + "' as a number");
  }
  if (used != t.size()) fail(key, "cannot parse '" + text + "' as a number");
  if (!std::isfinite(v)) fail(key, "value must be finite");
  return v;
}

Complex parse_complex(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (!t.empty() && t.front() == '(') {
    if (t.back() != ')') fail(key, "unterminated complex value '" + text + "'");
    const std::string body = t.substr(1, t.size() - 2);
    const auto comma = body.find(',');
    if (comma == std::string::npos) fail(key, "complex values are written (re,im), got '" + text + "'");
    return {parse_real(key, body.substr(0, comma)), parse_real(key, body.substr(comma + 1))};
  }
  return {parse_real(key, t), 0.0};
}

std::int64_t parse_integer(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    fail(key, "cannot parse '" + text + "' as an integer");
  }
  if (used != t.size()) fail(key, "cannot parse '" + text + "' as an integer");
  return v;
}

std::vector<double> parse_axis(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(t);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(trim(p));
    if (parts.size() != 4) fail(key, "axis must be min:max:points:scale, got '" + text + "'");
    const double lo = parse_real(key, parts[0]);
    const double hi = parse_real(key, parts[1]);
    const std::int64_t n = parse_integer(key, parts[2]);
    if (n < 1) fail(key, "points must be >= 1");
    const std::string& scale = parts[3];
    if (scale != "linear" && scale != "log") fail(key, "scale must be linear or log, got '" + scale + "'");
    if (scale == "log" && !(lo > 0.0 && hi > 0.0)) fail(key, "log axis needs positive bounds");
    std::vector<double> v(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
      const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
      v[static_cast<std::size_t>(i)] =
          scale == "log" ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo);
    }
    // exact endpoints
    v.front() = lo;
    if (n > 1) v.back() = hi;
    return v;
  }
  std::vector<double> v;
  std::stringstream ss(t);
  for (std::string p; std::getline(ss, p, ',');) {
    if (trim(p).empty()) continue;
    v.push_back(parse_real(key, p));
  }
  if (v.empty()) fail(key, "empty axis");
  return v;
}

RawConfig read_ini(std::istream& in) {
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_config(in);
  } catch (const CLI::Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  RawConfig raw;
  for (const auto& it : items) {
    if (it.name == "++" || it.name == "--") continue;
    std::string key;
    for (const auto& p : it.parents) key += p + ".";
    key += it.name;
    if (it.parents.empty()) fail(key, "key outside of any section");
    std::string value;
    for (std::size_t i = 0; i < it.inputs.size(); ++i) value += (i ? "," : "") + it.inputs[i];
    raw.emplace_back(key, value);
  }
  return raw;
}

RawConfig read_ini_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("--config: cannot open '" + path + "'");
  return read_ini(f);
}

std::pair<std::string, std::string> parse_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("--set: expected section.key=value, got '" + text + "'");
  const std::string key = trim(text.substr(0, eq));
  if (key.find('.') == std::string::npos) throw ConfigError("--set " + key + ": key must be section.key");
  return {key, trim(text.substr(eq + 1))};
}

RunConfig build_config(const RawConfig& raw) {
  static const std::map<std::string, Setter> table = setters();
  RunConfig c;
  for (const auto& [key, value] : raw) {
    if (key.rfind("sweep.", 0) == 0) {
      const std::string name = key.substr(6);
      if (!sweep_names().count(name)) fail(key, "unknown sweep axis (expected omega1, gamma, kappa or omega_drive)");
      SweepAxis axis{name, parse_axis(key, value)};
      bool replaced = false;
      for (auto& a : c.sweep)
        if (a.name == name) a = axis, replaced = true;
      if (!replaced) c.sweep.push_back(std::move(axis));
      continue;
    }
    if (key.rfind("regime.factor_", 0) == 0) {
      c.preparation.thresholds.factor_overrides[key.substr(14)] = positive(key, parse_real(key, value));
      continue;
    }
    const auto it = table.find(key);
    if (it == table.end()) fail(key, "unknown key");
    it->second(c, key, value);
  }
  if (c.preparation.n_max > c.preparation.n_max_limit) fail("run.n_max", "exceeds run.n_max_limit");
  return c;
}

}  // namespace cavitybell::cli
