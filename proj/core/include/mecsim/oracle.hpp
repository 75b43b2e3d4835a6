#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mecsim/scenario.hpp"
#include "mecsim/types.hpp"

namespace mecsim::oracle {

inline constexpr std::size_t kDefaultBudget = 1'000'000;

struct Options {
  std::size_t budget = kDefaultBudget;
  double margin = kDefaultMargin;
};

/// Number of (placement, selection) combinations enumerated for slot t.
/// Saturates instead of overflowing.
std::size_t enumeration_size(const Scenario& s, std::size_t t);

/// Every feasible decision of slot t, in lexicographic (placement, selection)
/// order. Throws OracleTooLarge past the budget.
std::vector<SlotDecision> feasible_decisions(const Scenario& s, std::size_t t,
                                             const Options& options = {});

struct SlotOptimum {
  SlotDecision decision;
  double value = 0.0;
};

/// Exact minimizer of the non-switching delay, or of the total delay when a
/// previous placement is given. Ties go to the lexicographically first
/// decision. Throws OracleTooLarge or Infeasible.
SlotOptimum best_slot_decision(const Scenario& s, std::size_t t,
                               const std::optional<SlotDecision>& prev,
                               const Options& options = {});

struct OfflinePlan {
  std::vector<SlotDecision> decisions;
  double total = 0.0;
};

/// Minimal sum over all slots of the total delay, by dynamic programming over
/// per-slot feasible decisions with switching-cost transitions. When `first`
/// is given, slot 0 is pinned to it.
OfflinePlan offline_optimal(const Scenario& s, const std::optional<SlotDecision>& first = {},
                            const Options& options = {});

/// True when offline_optimal fits within the budget.
bool fits_budget(const Scenario& s, const Options& options = {});

}  // namespace mecsim::oracle
