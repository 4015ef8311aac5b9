#include <gtest/gtest.h>

#include <cmath>

#include "oracles/oracles.hpp"
#include "qwalk/error.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {
namespace {

WalkConfig make_config(int k, int n, double chi) {
  WalkConfig c;
  c.k = k;
  c.n_steps = n;
  c.coin = coin_state_from_angle(chi);
  return c;
}

TEST(Phase, OneStepOnFixedGrid) {
  const PositionDistribution d = distribution_via_phase(make_config(2, 1, 0.0), 256);
  EXPECT_NEAR(d.probability(-2), 0.25, 1e-10);
  EXPECT_NEAR(d.probability(0), 0.5, 1e-10);
  EXPECT_NEAR(d.probability(2), 0.25, 1e-10);
  EXPECT_NEAR(d.probability(1), 0.0, 1e-10);
}

TEST(Phase, ZeroSteps) {
  const WalkConfig cfg = make_config(2, 0, 0.3);
  const PositionDistribution d = distribution_via_phase(cfg, default_grid_points(cfg));
  EXPECT_NEAR(d.probability(0), 1.0, 1e-14);
  EXPECT_NEAR(d.total(), 1.0, 1e-14);
}

TEST(Phase, MatchesPositionBasisAtTen) {
  const WalkConfig cfg = make_config(2, 10, kPi / 8);
  const PositionDistribution a = position_distribution(evolve(cfg));
  const PositionDistribution b = distribution_via_phase(cfg, default_grid_points(cfg));
  EXPECT_LT(a.max_abs_diff(b), 1e-8);
}

TEST(Phase, MatchesDenseOracle) {
  const int k = 1;
  const int n = 6;
  const int half = k * n + 1;
  const auto expected =
      oracle::distribution(oracle::evolve(coin_state_from_angle(0.4).matrix(), k, n, half), half);
  const WalkConfig cfg = make_config(k, n, 0.4);
  const PositionDistribution got = distribution_via_phase(cfg, minimum_grid_points(cfg));
  for (const auto& [m, p] : expected) EXPECT_NEAR(got.probability(m), p, 1e-12) << m;
}

TEST(Phase, CoarseGridRejected) {
  const WalkConfig cfg = make_config(2, 10, 0.0);
  EXPECT_EQ(minimum_grid_points(cfg), 41);
  EXPECT_THROW(distribution_via_phase(cfg, minimum_grid_points(cfg) - 1), ParameterError);
  EXPECT_NO_THROW(distribution_via_phase(cfg, minimum_grid_points(cfg)));
}

TEST(Phase, GridSizeDoesNotMatterAboveMinimum) {
  const WalkConfig cfg = make_config(2, 7, 1.1);
  const PositionDistribution a = distribution_via_phase(cfg, minimum_grid_points(cfg));
  const PositionDistribution b = distribution_via_phase(cfg, 3 * minimum_grid_points(cfg) + 5);
  EXPECT_LT(a.max_abs_diff(b), 1e-12);
}

TEST(Phase, MixedCoin) {
  WalkConfig cfg = make_config(2, 9, 0.0);
  cfg.coin = density_from_bloch({0.3, -0.4, 0.5});
  const PositionDistribution a = position_distribution(evolve(cfg));
  const PositionDistribution b = distribution_via_phase(cfg, default_grid_points(cfg));
  EXPECT_LT(a.max_abs_diff(b), 1e-10);
}

TEST(Phase, DualPathSweep) {
  for (int k : {1, 2}) {
    for (double chi : {0.0, kPi / 8, kPi / 4}) {
      for (int n : {1, 2, 5, 13, 20}) {
        const WalkConfig cfg = make_config(k, n, chi);
        const PositionDistribution a = position_distribution(evolve(cfg));
        const PositionDistribution b = distribution_via_phase(cfg, default_grid_points(cfg));
        EXPECT_LT(a.max_abs_diff(b), 1e-8) << "k=" << k << " chi=" << chi << " n=" << n;
      }
    }
  }
}

TEST(CharacteristicFunction, DiagonalIsOne) {
  const CoinState c = coin_state_from_angle(0.9);
  for (double phi : {0.0, 0.5, 2.0}) {
    EXPECT_NEAR(std::abs(characteristic_function(c, 2, phi, phi) - 1.0), 0.0, 1e-14);
  }
}

TEST(CharacteristicFunction, PhaseStepMatrixIsUnitary) {
  for (double phi : {0.0, 0.3, -1.7}) EXPECT_TRUE(is_unitary(phase_step_matrix(phi), 1e-14));
}

}  // namespace
}  // namespace qwalk
