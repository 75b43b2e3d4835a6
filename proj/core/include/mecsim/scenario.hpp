#pragma once

#include <cstddef>

#include "mecsim/types.hpp"

namespace mecsim {

/// Default strict slack on base-station load: queuing delay diverges at
/// load == capacity.
inline constexpr double kDefaultMargin = 1e-6;

/// Checks every Scenario invariant and returns a normalized copy (coverage
/// sets sorted and deduplicated).
///
/// Throws DimensionMismatch, NonPositiveCapacity, NegativeValue or
/// EmptyCoverage.
Scenario validate_scenario(Scenario raw);

/// True iff every user has exactly one in-range placement and selection,
/// cloud storage holds, and every base station keeps load <= C_j - margin.
bool decision_feasible(const Scenario& s, std::size_t t, const SlotDecision& d,
                       double margin = kDefaultMargin);

/// Per-base-station load sum_k c_k(t) [selection_k == j].
std::vector<double> station_loads(const Scenario& s, std::size_t t, const SlotDecision& d);

/// Per-cloud storage use sum_k s_k [placement_k == i].
std::vector<double> cloud_usage(const Scenario& s, const SlotDecision& d);

}  // namespace mecsim
