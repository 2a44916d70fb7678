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

#include <map>
#include <string>
#include <vector>

#include "cavitybell/cavity_models.hpp"

namespace cavitybell {

enum class Relation { much_less, similar, equal };
enum class Verdict { pass, warn };

const char* to_string(Relation r);
const char* to_string(Verdict v);

/**
 * Numeric readings of the qualitative regime conditions.
 *
 * "a << b" passes when a/b <= 1/much_less_factor; "a ~ b" passes when
 * a/b lies within [1/similar_factor, similar_factor]; "a = b" passes when
 * |a/b - 1| <= equality_tolerance. `factor_overrides` replaces the factor
 * for an individual named check.
 */
struct RegimeThresholds {
  double much_less_factor = 10.0;
  double similar_factor = 3.0;
  double equality_tolerance = 1e-9;
  std::map<std::string, double> factor_overrides = default_overrides();

  [[nodiscard]] double factor_for(const std::string& name, Relation rel) const;

  // The four-level operating point uses |Omega1| = 2g, so "g << |Omega1|" is
  // read with a factor of 2 by default.
  static std::map<std::string, double> default_overrides() { return {{"g_over_omega1", 2.0}}; }
};

struct RegimeCheck {
  std::string name;   ///< e.g. "omega1_over_g"
  std::string group;  ///< which family of conditions the check belongs to
  Relation relation = Relation::much_less;
  double ratio = 0.0;
  double factor = 0.0;
  Verdict verdict = Verdict::pass;
};

struct RegimeReport {
  std::vector<RegimeCheck> checks;

  [[nodiscard]] bool all_pass() const;
  [[nodiscard]] const RegimeCheck* find(const std::string& name) const;
  [[nodiscard]] std::string to_text() const;
};

/// Evaluate one named ratio num/den against `thresholds`.
RegimeCheck make_check(const std::string& group, const std::string& name, Relation rel, double num, double den,
                       const RegimeThresholds& thresholds);

RegimeReport validate_regime(const TwoLevelParams& p, const RegimeThresholds& thresholds = {});
RegimeReport validate_regime(const FourLevelParams& p, const RegimeThresholds& thresholds = {});

}  // namespace cavitybell
