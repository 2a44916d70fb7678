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

#include "cavitybell/regime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cavitybell {

const char* to_string(Relation r) {
  switch (r) {
    case Relation::much_less: return "<<";
    case Relation::similar: return "~";
    case Relation::equal: return "=";
  }
  return "?";
}

const char* to_string(Verdict v) { return v == Verdict::pass ? "pass" : "warn"; }

double RegimeThresholds::factor_for(const std::string& name, Relation rel) const {
  if (auto it = factor_overrides.find(name); it != factor_overrides.end()) return it->second;
  switch (rel) {
    case Relation::much_less: return much_less_factor;
    case Relation::similar: return similar_factor;
    case Relation::equal: return equality_tolerance;
  }
  return 0.0;
}

bool RegimeReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const RegimeCheck& c) { return c.verdict == Verdict::pass; });
}

const RegimeCheck* RegimeReport::find(const std::string& name) const {
  auto it = std::find_if(checks.begin(), checks.end(), [&](const RegimeCheck& c) { return c.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

std::string RegimeReport::to_text() const {
  std::ostringstream os;
  os.precision(6);
  for (const auto& c : checks) {
    os << c.group << '\t' << c.name << '\t' << to_string(c.relation) << '\t' << c.ratio << '\t' << to_string(c.verdict)
       << '\n';
  }
  os << (all_pass() ? "regime: pass" : "regime: warn") << '\n';
  return os.str();
}

RegimeCheck make_check(const std::string& group, const std::string& name, Relation rel, double num, double den,
                       const RegimeThresholds& thresholds) {
  RegimeCheck c;
  c.group = group;
  c.name = name;
  c.relation = rel;
  c.factor = thresholds.factor_for(name, rel);
  num = std::abs(num);
  den = std::abs(den);
  if (num == 0.0) {
    c.ratio = 0.0;
  } else if (den == 0.0) {
    c.ratio = std::numeric_limits<double>::infinity();
  } else {
    c.ratio = num / den;
  }
  bool ok = false;
  switch (rel) {
    case Relation::much_less: ok = c.ratio * c.factor <= 1.0; break;
    case Relation::similar: ok = c.ratio >= 1.0 / c.factor && c.ratio <= c.factor; break;
    case Relation::equal: ok = std::abs(c.ratio - 1.0) <= c.factor || (num == 0.0 && den == 0.0); break;
  }
  c.verdict = ok ? Verdict::pass : Verdict::warn;
  return c;
}

namespace {

class ReportBuilder {
 public:
  explicit ReportBuilder(const RegimeThresholds& t) : t_(t) {}

  void add(const std::string& group, const std::string& name, Relation rel, double num, double den) {
    report_.checks.push_back(make_check(group, name, rel, num, den, t_));
  }

  RegimeReport take() { return std::move(report_); }

 private:
  const RegimeThresholds& t_;
  RegimeReport report_;
};

}  // namespace

RegimeReport validate_regime(const TwoLevelParams& p, const RegimeThresholds& thresholds) {
  ReportBuilder b(thresholds);
  const std::array<Complex, 2> drives{p.omega1, p.omega2};
  for (std::size_t i = 0; i < 2; ++i) {
    const double om = std::abs(drives[i]);
    if (om == 0.0) continue;  // conditions apply to non-vanishing drives only
    const std::string idx = std::to_string(i + 1);
    b.add("zeno", "gamma_over_omega" + idx, Relation::much_less, p.gamma, om);
    b.add("zeno", "omega" + idx + "_over_g", Relation::much_less, om, p.g);
  }
  b.add("zeno", "kappa_over_g", Relation::similar, p.kappa, p.g);
  return b.take();
}

RegimeReport validate_regime(const FourLevelParams& p, const RegimeThresholds& thresholds) {
  ReportBuilder b(thresholds);
  const double detuning = std::min(std::abs(p.delta2), std::abs(p.delta3));
  const double om0 = std::abs(p.omega0);
  const double om1 = std::abs(p.omega1);
  const double weak = std::max(std::abs(p.omega_i[0]), std::abs(p.omega_i[1]));

  b.add("far_detuning", "omega0_over_delta", Relation::much_less, om0, detuning);
  b.add("far_detuning", "omega1_over_delta", Relation::much_less, om1, detuning);
  b.add("far_detuning", "omega_i_over_delta", Relation::much_less, weak, detuning);
  b.add("far_detuning", "g_over_delta", Relation::much_less, p.g, detuning);
  b.add("far_detuning", "gamma2_over_delta", Relation::much_less, p.gamma2, detuning);
  b.add("far_detuning", "gamma3_over_delta", Relation::much_less, p.gamma3, detuning);
  b.add("far_detuning", "delta2_over_delta3", Relation::similar, p.delta2, p.delta3);

  b.add("balanced_shifts", "omega0_over_omega1", Relation::equal, om0, om1);
  b.add("balanced_shifts", "delta2_equals_delta3", Relation::equal, p.delta2, p.delta3);
  b.add("balanced_shifts", "g_over_omega1", Relation::much_less, p.g, om1);
  b.add("balanced_shifts", "omega_i_over_omega0", Relation::much_less, weak, om0);

  b.add("effective_zeno", "omega_i_over_g", Relation::much_less, weak, p.g);
  b.add("effective_zeno", "kappa_over_g_eff", Relation::similar, p.kappa, p.g * om1 / std::abs(p.delta2));
  return b.take();
}

}  // namespace cavitybell
