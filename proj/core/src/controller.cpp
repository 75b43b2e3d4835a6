#include "mecsim/controller.hpp"

#include <cmath>

#include <fmt/format.h>

#include "mecsim/delay.hpp"
#include "mecsim/errors.hpp"
#include "mecsim/rng.hpp"
#include "mecsim/scenario.hpp"

namespace mecsim {

std::string PolicyKind::name() const {
  switch (type) {
    case PolicyType::kThreshold:
      return "threshold";
    case PolicyType::kAlwaysMigrate:
      return "always";
    case PolicyType::kNeverMigrate:
      return "never";
    case PolicyType::kOfflineOracle:
      return "oracle";
  }
  return "unknown";
}

std::uint64_t slot_seed(std::uint64_t run_seed, std::size_t t) {
  return derive_seed(run_seed, "round", t);
}

bool stay_feasible(const Scenario& s, std::size_t t, const SlotDecision& d, double margin) {
  return decision_feasible(s, t, d, margin);
}

SlotOutcome initial_slot(const Scenario& s, std::uint64_t run_seed,
                         const ControllerConfig& config) {
  SlotSolution sol = solve_slot(s, 0, std::nullopt, slot_seed(run_seed, 0), config.solver);
  SlotOutcome out;
  out.slot = 0;
  out.decision = std::move(sol.decision);
  out.delay = total_delay(s, 0, out.decision, nullptr);
  out.t2_accumulated = out.delay.non_switching;
  out.solver = std::move(sol.report);
  return out;
}

ControllerState start_state(const SlotOutcome& first, double beta) {
  ControllerState state;
  state.prev_decision = first.decision;
  state.last_migration_slot = first.slot;
  state.accumulated_t2 = first.t2_accumulated;
  state.beta = beta;
  return state;
}

namespace {

// Adopts `cand` at slot t and returns the post-migration state.
ControllerState migrate_to(const Scenario& s, std::size_t t, const ControllerState& state,
                           SlotOutcome& out, SlotDecision cand) {
  out.migrated = true;
  out.delay = total_delay(s, t, cand, &state.prev_decision);
  out.decision = std::move(cand);
  ControllerState next = state;
  next.prev_decision = out.decision;
  next.last_migration_slot = t;
  next.accumulated_t2 = out.delay.non_switching;
  return next;
}

ControllerState stay(const Scenario& s, std::size_t t, const ControllerState& state,
                     SlotOutcome& out, double t2) {
  out.migrated = false;
  out.decision = state.prev_decision;
  out.delay = total_delay(s, t, out.decision, nullptr);
  ControllerState next = state;
  next.accumulated_t2 = t2;
  return next;
}

}  // namespace

std::pair<SlotOutcome, ControllerState> step(const Scenario& s, std::size_t t,
                                             const ControllerState& state,
                                             std::uint64_t run_seed,
                                             const ControllerConfig& config) {
  if (t == 0 || t >= s.num_slots) throw DimensionMismatch(fmt::format("step slot {} invalid", t));
  SlotOutcome out;
  out.slot = t;

  const bool keepable = stay_feasible(s, t, state.prev_decision, config.solver.margin);
  SlotSolution cand =
      solve_slot(s, t, state.prev_decision, slot_seed(run_seed, t), config.solver);
  out.solver = std::move(cand.report);
  out.t1_candidate = switching_delay(s, cand.decision, state.prev_decision);

  if (!keepable) {
    out.forced = true;
    out.t2_accumulated = state.accumulated_t2;
    ControllerState next = migrate_to(s, t, state, out, std::move(cand.decision));
    return {std::move(out), std::move(next)};
  }

  const double stay_ns = non_switching_delay(s, t, state.prev_decision);
  const double t2 = state.accumulated_t2 + stay_ns;
  out.t2_accumulated = t2;
  // An infinite beta never reaches the threshold, even for a free switch.
  const double threshold = std::isinf(state.beta) ? kInfinity : state.beta * out.t1_candidate;
  if (t2 < threshold) {
    ControllerState next = stay(s, t, state, out, t2);
    return {std::move(out), std::move(next)};
  }
  ControllerState next = migrate_to(s, t, state, out, std::move(cand.decision));
  return {std::move(out), std::move(next)};
}

namespace {

std::vector<SlotOutcome> run_baseline(const Scenario& s, bool always, SlotOutcome first,
                                      std::uint64_t run_seed, const ControllerConfig& config) {
  std::vector<SlotOutcome> outcomes;
  ControllerState state = start_state(first, always ? 0.0 : kInfinity);
  outcomes.push_back(std::move(first));
  for (std::size_t t = 1; t < s.num_slots; ++t) {
    SlotOutcome out;
    out.slot = t;
    const bool keepable = stay_feasible(s, t, state.prev_decision, config.solver.margin);
    if (always || !keepable) {
      SlotSolution cand =
          solve_slot(s, t, state.prev_decision, slot_seed(run_seed, t), config.solver);
      out.solver = std::move(cand.report);
      out.t1_candidate = switching_delay(s, cand.decision, state.prev_decision);
      out.forced = !keepable;
      out.t2_accumulated = keepable
                               ? state.accumulated_t2 + non_switching_delay(s, t, state.prev_decision)
                               : state.accumulated_t2;
      state = migrate_to(s, t, state, out, std::move(cand.decision));
    } else {
      const double t2 = state.accumulated_t2 + non_switching_delay(s, t, state.prev_decision);
      out.t2_accumulated = t2;
      state = stay(s, t, state, out, t2);
    }
    outcomes.push_back(std::move(out));
  }
  return outcomes;
}

std::vector<SlotOutcome> run_oracle(const Scenario& s, SlotOutcome first,
                                    const ControllerConfig& config) {
  const oracle::OfflinePlan plan = oracle::offline_optimal(s, first.decision, config.oracle);
  std::vector<SlotOutcome> outcomes;
  ControllerState state = start_state(first, 0.0);
  outcomes.push_back(std::move(first));
  for (std::size_t t = 1; t < s.num_slots; ++t) {
    SlotOutcome out;
    out.slot = t;
    const SlotDecision& next = plan.decisions[t];
    out.t1_candidate = switching_delay(s, next, state.prev_decision);
    out.forced = !stay_feasible(s, t, state.prev_decision, config.oracle.margin);
    if (next != state.prev_decision) {
      out.t2_accumulated = state.accumulated_t2;
      state = migrate_to(s, t, state, out, next);
    } else {
      const double t2 = state.accumulated_t2 + non_switching_delay(s, t, next);
      out.t2_accumulated = t2;
      state = stay(s, t, state, out, t2);
    }
    outcomes.push_back(std::move(out));
  }
  return outcomes;
}

}  // namespace

std::vector<SlotOutcome> run_policy(const Scenario& s, const PolicyKind& policy,
                                    std::uint64_t run_seed, const ControllerConfig& config) {
  if (policy.type == PolicyType::kThreshold && !(policy.beta >= 0.0)) {
    throw ConfigError("beta must be nonnegative or +inf");
  }
  if (policy.type == PolicyType::kOfflineOracle && !oracle::fits_budget(s, config.oracle)) {
    throw OracleTooLarge("scenario exceeds the oracle enumeration budget");
  }
  SlotOutcome first = initial_slot(s, run_seed, config);
  switch (policy.type) {
    case PolicyType::kAlwaysMigrate:
      return run_baseline(s, true, std::move(first), run_seed, config);
    case PolicyType::kNeverMigrate:
      return run_baseline(s, false, std::move(first), run_seed, config);
    case PolicyType::kOfflineOracle:
      return run_oracle(s, std::move(first), config);
    case PolicyType::kThreshold:
      break;
  }
  std::vector<SlotOutcome> outcomes;
  ControllerState state = start_state(first, policy.beta);
  outcomes.push_back(std::move(first));
  for (std::size_t t = 1; t < s.num_slots; ++t) {
    auto [out, next] = step(s, t, state, run_seed, config);
    outcomes.push_back(std::move(out));
    state = std::move(next);
  }
  return outcomes;
}

}  // namespace mecsim
