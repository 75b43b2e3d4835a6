#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mecsim/oracle.hpp"
#include "mecsim/relaxed_optimizer.hpp"
#include "mecsim/types.hpp"

namespace mecsim {

struct SlotOutcome {
  std::size_t slot = 0;
  SlotDecision decision;
  bool migrated = false;
  bool forced = false;
  DelayBreakdown delay;
  double t1_candidate = 0.0;    // switching cost of the freshly solved candidate
  double t2_accumulated = 0.0;  // T2 used in this slot's comparison
  SolverReport solver;          // empty when no solve ran in this slot
};

enum class PolicyType { kThreshold, kAlwaysMigrate, kNeverMigrate, kOfflineOracle };

struct PolicyKind {
  PolicyType type = PolicyType::kThreshold;
  double beta = 1.0;  // only meaningful for kThreshold; may be +inf

  static PolicyKind threshold(double beta) { return {PolicyType::kThreshold, beta}; }
  static PolicyKind always_migrate() { return {PolicyType::kAlwaysMigrate, 0.0}; }
  static PolicyKind never_migrate() { return {PolicyType::kNeverMigrate, kInfinity}; }
  static PolicyKind offline_oracle() { return {PolicyType::kOfflineOracle, 0.0}; }

  std::string name() const;
};

struct ControllerConfig {
  SolverConfig solver;
  oracle::Options oracle;
};

/// Rounding seed of slot t; every policy uses the same stream for a run seed.
std::uint64_t slot_seed(std::uint64_t run_seed, std::size_t t);

/// Slot 0: minimize the non-switching delay with no prior placement.
SlotOutcome initial_slot(const Scenario& s, std::uint64_t run_seed,
                         const ControllerConfig& config = {});

/// Initial controller state after slot 0.
ControllerState start_state(const SlotOutcome& first, double beta);

/// One threshold-policy decision for slot t >= 1: stay while the accumulated
/// non-switching delay T2 stays below beta times the candidate's switching
/// cost T1, otherwise migrate to the candidate.
std::pair<SlotOutcome, ControllerState> step(const Scenario& s, std::size_t t,
                                             const ControllerState& state,
                                             std::uint64_t run_seed,
                                             const ControllerConfig& config = {});

std::vector<SlotOutcome> run_policy(const Scenario& s, const PolicyKind& policy,
                                    std::uint64_t run_seed, const ControllerConfig& config = {});

/// True when `d` can be kept at slot t: coverage holds and no capacity is
/// exceeded.
bool stay_feasible(const Scenario& s, std::size_t t, const SlotDecision& d, double margin);

}  // namespace mecsim
