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

#include <gtest/gtest.h>

#include <cmath>

#include "cavitybell/cavity_models.hpp"
#include "cavitybell/protocols.hpp"
#include "cavitybell/regime.hpp"
#include "cavitybell/trajectory.hpp"

namespace cavitybell {
namespace {


TwoLevelParams fig2_point(double omega, double gamma = 0.0) {
  TwoLevelParams p;
  p.gamma = gamma;
  p.omega1 = omega;
  p.omega2 = -omega;
  return p;
}

TEST(TwoLevel, CavityExchangeElements) {
  const HilbertDims d = two_atom_dims(2, 2);
  TwoLevelParams p;
  p.g = 0.7;
  const OperatorMatrix h = h_cond_two_level(p, d);
  EXPECT_NEAR(std::abs(h.element({0, 1, 0}, {1, 0, 0}) - Complex{0.0, 0.7}), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h.element({1, 0, 0}, {0, 1, 0}) - Complex{0.0, -0.7}), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h.element({2, 0, 0}, {1, 0, 1}) - Complex{0.0, -0.7 * std::sqrt(2.0)}), 0.0, 1e-15);
}

TEST(TwoLevel, DiagonalDamping) {
  const HilbertDims d = two_atom_dims(2, 2);
  TwoLevelParams p;
  p.kappa = 0.3;
  p.gamma = 0.05;
  const OperatorMatrix h = h_cond_two_level(p, d);
  EXPECT_NEAR(std::abs(h.element({2, 1, 1}, {2, 1, 1}) - Complex{0.0, -(2 * 0.3 + 2 * 0.05)}), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h.element({0, 0, 0}, {0, 0, 0})), 0.0, 1e-15);
}

TEST(TwoLevel, LaserIsHermitianForComplexDrives) {
  TwoLevelParams p;
  p.omega1 = {0.3, -0.2};
  p.omega2 = {-0.1, 0.4};
  const HilbertDims d = two_atom_dims(2, 1);
  const OperatorMatrix h = h_laser_two_level(p, d);
  EXPECT_TRUE(h.is_hermitian());
  EXPECT_NEAR(std::abs(h.element({0, 1, 0}, {0, 0, 0}) - 0.5 * p.omega1), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h.element({0, 0, 1}, {0, 0, 0}) - 0.5 * p.omega2), 0.0, 1e-15);
}

TEST(TwoLevel, TrappedStateIsDark) {
  const HilbertDims d = two_atom_dims(2, 3);
  TwoLevelParams p;
  p.kappa = 2.0;
  const StateVector out = h_cond_two_level(p, d).apply(trapped_state(d));
  EXPECT_LT(out.squared_norm(), 1e-28);
}

TEST(TwoLevel, ZenoHamiltonianCouplesGroundAndTrapped) {
  const HilbertDims d = two_atom_dims(2, 2);
  const TwoLevelParams p = fig2_point(0.01);
  const OperatorMatrix h = h_cond_two_level(p, d) + h_laser_two_level(p, d);
  const OperatorMatrix heff = h_eff_zeno(h, dfs_projector(d));
  const StateVector a = trapped_state(d);
  const StateVector g = ground_state(d);
  EXPECT_NEAR(std::abs(a.inner(heff.apply(g)) - 0.5 * p.omega_minus()), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a.inner(heff.apply(a))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g.inner(heff.apply(g))), 0.0, 1e-15);
}

TEST(TwoLevel, ZenoRejectsNonProjector) {
  const HilbertDims d = two_atom_dims(2, 1);
  OperatorMatrix not_p = OperatorMatrix::identity(d);
  not_p *= Complex{0.5, 0.0};
  EXPECT_THROW(h_eff_zeno(h_cond_two_level({}, d), not_p), std::invalid_argument);
}

TEST(TwoLevel, JumpChannelsMatchAntiHermitianPart) {
  const HilbertDims d = two_atom_dims(2, 3);
  TwoLevelParams p = fig2_point(0.02, 0.01);
  p.kappa = 0.8;
  const auto jumps = jump_channels_two_level(p, d);
  EXPECT_EQ(jumps.size(), 3u);
  EXPECT_NO_THROW(check_jump_consistency(h_cond_two_level(p, d) + h_laser_two_level(p, d), jumps));
  p.gamma = 0.0;
  EXPECT_EQ(jump_channels_two_level(p, d).size(), 1u);
}

TEST(TwoLevel, CombinedDrives) {
  TwoLevelParams p;
  p.omega1 = 0.02;
  p.omega2 = -0.02;
  EXPECT_NEAR(std::abs(p.omega_minus()), 0.04 / std::sqrt(2.0), 1e-17);
  EXPECT_NEAR(std::abs(p.omega_plus()), 0.0, 1e-17);
}

TEST(TwoLevel, RejectsNegativeRates) {
  TwoLevelParams p;
  p.kappa = -1.0;
  EXPECT_THROW(h_cond_two_level(p, two_atom_dims(2, 1)), std::invalid_argument);
}

TEST(FourLevel, Elements) {
  const HilbertDims d = two_atom_dims(4, 1);
  FourLevelParams p;
  p.gamma2 = 0.1;
  p.gamma3 = 0.2;
  const OperatorMatrix h = h_cond_four_level(p, d);
  EXPECT_NEAR(std::abs(h.element({0, 2, 0}, {0, 2, 0}) - Complex{400.0, -0.1}), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(h.element({0, 0, 3}, {0, 0, 3}) - Complex{400.0, -0.2}), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(h.element({0, 2, 0}, {1, 0, 0}) - Complex{0.0, 1.0}), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h.element({0, 2, 0}, {0, 1, 0}) - 0.5 * p.omega1), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h.element({0, 3, 0}, {0, 0, 0}) - 0.5 * p.omega0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h.element({0, 0, 3}, {0, 0, 1}) - 0.5 * p.omega_i[1]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h.element({1, 0, 0}, {1, 0, 0}) - Complex{0.0, -p.kappa}), 0.0, 1e-15);
}

TEST(FourLevel, EffectiveParameters) {
  const EffectiveParams e = effective_params(FourLevelParams{});
  EXPECT_NEAR(std::abs(e.g_eff - Complex{-0.0025, 0.0}), 0.0, 1e-17);
  EXPECT_NEAR(std::abs(e.omega_eff[0] - Complex{-2.5e-5, 0.0}), 0.0, 1e-19);
  EXPECT_NEAR(std::abs(e.omega_eff[1] - Complex{2.5e-5, 0.0}), 0.0, 1e-19);
}

TEST(FourLevel, BalancedShiftsLeaveGroundManifoldDegenerate) {
  FourLevelParams p;
  p.omega_i = {Complex{}, Complex{}};
  const HilbertDims d = two_atom_dims(2, 1);
  const OperatorMatrix h = h_eff_four_level(p, d);
  const Complex e00 = h.element({0, 0, 0}, {0, 0, 0});
  EXPECT_NEAR(std::abs(h.element({0, 1, 0}, {0, 1, 0}) - e00), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h.element({0, 1, 1}, {0, 1, 1}) - e00), 0.0, 1e-15);
  EXPECT_NEAR(e00.real(), -0.5 * 4.0 / 400.0, 1e-15);
}

TEST(FourLevel, ReducedModelTracksFullModel) {
  const FourLevelParams p;
  const double t = preparation_duration_four_level(p);
  const HilbertDims full = two_atom_dims(4, 2);
  const HilbertDims red = two_atom_dims(2, 2);
  const StateVector a = evolve_nojump(h_cond_four_level(p, full), ground_state(full), t);
  const StateVector b = evolve_nojump(h_eff_four_level(p, red), ground_state(red), t);
  Complex overlap{};
  double norm_a = 0.0;
  for (int n = 0; n <= 2; ++n)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int j2 = 0; j2 < 2; ++j2) {
        overlap += std::conj(b.amplitude(n, j1, j2)) * a.amplitude(n, j1, j2);
        norm_a += std::norm(a.amplitude(n, j1, j2));
      }
  EXPECT_GT(std::norm(overlap) / (norm_a * b.squared_norm()), 1.0 - 1e-6);
}

TEST(FourLevel, RotationHamiltonianIsSingleAtom) {
  const OperatorMatrix h = h_rotation_four_level(FourLevelParams{}, 0);
  EXPECT_EQ(h.size(), 4);
  EXPECT_TRUE(h.is_hermitian());
}

TEST(Regime, Fig2ParametersPass) {
  for (double om : {1e-3, 1e-2, 1e-1})
    for (double ga : {0.0, 1e-3, 1e-2}) {
      if (ga > 0.0 && ga >= om / 10.0) continue;
      EXPECT_TRUE(validate_regime(fig2_point(om, ga)).all_pass()) << om << " " << ga;
    }
}

TEST(Regime, StrongDriveWarns) {
  const RegimeReport r = validate_regime(fig2_point(1.0));
  EXPECT_FALSE(r.all_pass());
  ASSERT_NE(r.find("omega1_over_g"), nullptr);
  EXPECT_EQ(r.find("omega1_over_g")->verdict, Verdict::warn);
  EXPECT_EQ(r.find("kappa_over_g")->verdict, Verdict::pass);
}

TEST(Regime, CavityLeakMustBeComparableToG) {
  TwoLevelParams p = fig2_point(0.01);
  p.kappa = 10.0;
  EXPECT_EQ(validate_regime(p).find("kappa_over_g")->verdict, Verdict::warn);
}

TEST(Regime, Fig6ParametersPass) {
  for (double ga : {0.0, 0.1, 1.0}) {
    FourLevelParams p;
    p.gamma2 = p.gamma3 = ga;
    EXPECT_TRUE(validate_regime(p).all_pass()) << ga;
  }
}

TEST(Regime, UnbalancedShiftsWarn) {
  FourLevelParams p;
  p.omega0 = 3.0;
  EXPECT_EQ(validate_regime(p).find("omega0_over_omega1")->verdict, Verdict::warn);
  p = FourLevelParams{};
  p.delta3 = 401.0;
  EXPECT_EQ(validate_regime(p).find("delta2_equals_delta3")->verdict, Verdict::warn);
}

TEST(Regime, FactorOverride) {
  FourLevelParams p;
  RegimeThresholds strict;
  strict.factor_overrides.clear();
  EXPECT_EQ(validate_regime(p, strict).find("g_over_omega1")->verdict, Verdict::warn);
  EXPECT_EQ(validate_regime(p).find("g_over_omega1")->verdict, Verdict::pass);
}

TEST(Regime, TextReport) {
  const std::string t = validate_regime(fig2_point(1.0)).to_text();
  EXPECT_NE(t.find("omega1_over_g"), std::string::npos);
  EXPECT_NE(t.find("warn"), std::string::npos);
}

}  // namespace
}  // namespace cavitybell
