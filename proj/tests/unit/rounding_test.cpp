#include <array>
#include <cmath>

#include <gtest/gtest.h>

#include "mecsim/errors.hpp"
#include "mecsim/relaxed_optimizer.hpp"
#include "support/builders.hpp"
#include "support/random_instances.hpp"

namespace mecsim {
namespace {

using testing::SlotBuilder;

Scenario roomy(std::size_t clouds, std::size_t users) {
  SlotBuilder b;
  b.bs_capacity.assign(clouds, 100.0);
  b.cloud_capacity.assign(clouds, 100.0);
  b.service_size.assign(users, 1.0);
  b.demand.assign(users, 1.0);
  return b.build();
}

TEST(RoundDecision, IntegralInputUnchanged) {
  const Scenario s = roomy(3, 2);
  const SlotDecision d{{2, 0}, {1, 1}};
  const auto [out, report] = round_decision(s, 0, to_fractional(d, 3), 17);
  EXPECT_EQ(out, d);
  EXPECT_EQ(report.rounding_attempts, 1u);
  EXPECT_EQ(report.repair_actions, 0u);
}

TEST(RoundDecision, CategoricalFrequencies) {
  const Scenario s = roomy(3, 1);
  FractionalDecision f{Matrix(3, 1), Matrix(3, 1)};
  f.x(0, 0) = 0.5;
  f.x(1, 0) = 0.5;
  f.y(0, 0) = 0.2;
  f.y(1, 0) = 0.3;
  f.y(2, 0) = 0.5;
  std::array<int, 3> px{}, py{};
  const int n = 100000;
  for (int r = 0; r < n; ++r) {
    const auto [d, report] = round_decision(s, 0, f, static_cast<std::uint64_t>(r));
    ++px[d.placement[0]];
    ++py[d.selection[0]];
  }
  const std::array<double, 3> wx{0.5, 0.5, 0.0}, wy{0.2, 0.3, 0.5};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(px[i] / double(n), wx[i], 0.01);
    EXPECT_NEAR(py[i] / double(n), wy[i], 0.01);
  }
  EXPECT_EQ(px[2], 0);
}

TEST(RoundDecision, AdversarialStorageFails) {
  // 2 clouds with S = 1.5 and 3 users with s = 1: the fractional polytope is
  // nonempty but no integral placement fits (tests/oracles/examples.py).
  SlotBuilder b;
  b.bs_capacity = {10, 10};
  b.cloud_capacity = {1.5, 1.5};
  b.service_size = {1, 1, 1};
  b.demand = {1, 1, 1};
  const Scenario s = b.build();
  const auto [frac, report] = solve_fractional(s, 0, std::nullopt);
  EXPECT_THROW(round_decision(s, 0, frac, 3), RoundingFailed);
}

TEST(RoundDecision, RepairFixesOverloadedSample) {
  // Both users prefer BS 0 but only one fits; no sampling attempts so the
  // argmax is repaired deterministically.
  SlotBuilder b;
  b.bs_capacity = {3, 3};
  b.cloud_capacity = {10, 10};
  b.service_size = {1, 1};
  b.demand = {2, 2};
  const Scenario s = b.build();
  FractionalDecision f{Matrix(2, 2), Matrix(2, 2)};
  f.x(0, 0) = f.x(0, 1) = 1.0;
  f.y(0, 0) = f.y(0, 1) = 1.0;
  SolverConfig cfg;
  cfg.max_rounding_attempts = 0;
  const auto [d, report] = round_decision(s, 0, f, 1, cfg);
  EXPECT_TRUE(decision_feasible(s, 0, d));
  EXPECT_EQ(report.repair_actions, 1u);
  // Equal contributions: the lowest-index user moves.
  EXPECT_EQ(d.selection, (std::vector<std::size_t>{1, 0}));
}

TEST(RoundDecision, OutputsAlwaysFeasible) {
  std::size_t returned = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const Scenario s = testing::random_scenario({.clouds = 3, .users = 4}, seed);
    try {
      const SlotSolution sol = solve_slot(s, 0, std::nullopt, seed);
      EXPECT_TRUE(decision_feasible(s, 0, sol.decision)) << "seed " << seed;
      ++returned;
    } catch (const RoundingFailed&) {
    } catch (const Infeasible&) {
    } catch (const NoInteriorPoint&) {
    }
  }
  EXPECT_GT(returned, 100u);
}

TEST(RoundDecision, SameSeedSameDecision) {
  const Scenario s = roomy(4, 5);
  FractionalDecision f{Matrix(4, 5), Matrix(4, 5)};
  for (std::size_t k = 0; k < 5; ++k) {
    for (std::size_t i = 0; i < 4; ++i) f.x(i, k) = f.y(i, k) = 0.25;
  }
  EXPECT_EQ(round_decision(s, 0, f, 42).first, round_decision(s, 0, f, 42).first);
}

}  // namespace
}  // namespace mecsim
