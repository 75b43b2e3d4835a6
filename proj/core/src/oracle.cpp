#include "mecsim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "mecsim/delay.hpp"
#include "mecsim/errors.hpp"

namespace mecsim::oracle {

namespace {

constexpr std::size_t kSaturated = std::numeric_limits<std::size_t>::max();

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

// Strictly better, treating values within 1e-12 relative as ties.
bool better(double candidate, double incumbent) {
  if (!std::isfinite(incumbent)) return candidate < incumbent;
  return candidate < incumbent - 1e-12 * std::max(1.0, std::abs(incumbent));
}

}  // namespace

std::size_t enumeration_size(const Scenario& s, std::size_t t) {
  std::size_t widest = 0;
  for (const auto& cov : s.coverage[t]) widest = std::max(widest, cov.size());
  std::size_t size = 1;
  for (std::size_t k = 0; k < s.num_users; ++k) {
    size = saturating_mul(size, s.num_clouds);
    size = saturating_mul(size, widest);
  }
  return size;
}

std::vector<SlotDecision> feasible_decisions(const Scenario& s, std::size_t t,
                                             const Options& options) {
  const std::size_t size = enumeration_size(s, t);
  if (size > options.budget) {
    throw OracleTooLarge(
        fmt::format("slot {} needs {} combinations, budget is {}", t, size, options.budget));
  }
  const std::size_t n = s.num_users;
  const auto& cov = s.coverage[t];

  std::vector<SlotDecision> out;
  SlotDecision d;
  d.placement.assign(n, 0);
  d.selection.resize(n);
  // Odometers with user 0 most significant give lexicographic order.
  while (true) {
    std::vector<std::size_t> pick(n, 0);
    while (true) {
      for (std::size_t k = 0; k < n; ++k) d.selection[k] = cov[k][pick[k]];
      if (decision_feasible(s, t, d, options.margin)) out.push_back(d);
      std::size_t k = n;
      while (k > 0 && ++pick[k - 1] == cov[k - 1].size()) pick[--k] = 0;
      if (k == 0) break;
    }
    std::size_t k = n;
    while (k > 0 && ++d.placement[k - 1] == s.num_clouds) d.placement[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

SlotOptimum best_slot_decision(const Scenario& s, std::size_t t,
                               const std::optional<SlotDecision>& prev, const Options& options) {
  const auto decisions = feasible_decisions(s, t, options);
  if (decisions.empty()) throw Infeasible(fmt::format("slot {} has no feasible decision", t));
  SlotOptimum best{decisions.front(), kInfinity};
  bool first = true;
  for (const auto& d : decisions) {
    const double value = total_delay(s, t, d, prev ? &*prev : nullptr).total;
    if (first || better(value, best.value)) {
      best = {d, value};
      first = false;
    }
  }
  return best;
}

namespace {

struct DpWork {
  std::vector<std::vector<SlotDecision>> layers;
  std::size_t work = 0;
};

DpWork build_layers(const Scenario& s, const std::optional<SlotDecision>& first,
                    const Options& options) {
  DpWork w;
  for (std::size_t t = 0; t < s.num_slots; ++t) {
    if (t == 0 && first) {
      if (!decision_feasible(s, 0, *first, options.margin)) {
        throw Infeasible("pinned slot-0 decision is infeasible");
      }
      w.layers.push_back({*first});
    } else {
      w.layers.push_back(feasible_decisions(s, t, options));
    }
    if (w.layers.back().empty()) {
      throw Infeasible(fmt::format("slot {} has no feasible decision", t));
    }
    const std::size_t prev = t == 0 ? 1 : w.layers[t - 1].size();
    const std::size_t step = saturating_mul(prev, w.layers[t].size());
    w.work = step > kSaturated - w.work ? kSaturated : w.work + step;
    if (w.work > options.budget) {
      throw OracleTooLarge(
          fmt::format("offline search needs {} transitions, budget is {}", w.work, options.budget));
    }
  }
  return w;
}

}  // namespace

bool fits_budget(const Scenario& s, const Options& options) {
  std::size_t work = 0;
  std::size_t prev = 1;
  for (std::size_t t = 0; t < s.num_slots; ++t) {
    const std::size_t size = enumeration_size(s, t);
    if (size > options.budget) return false;
    const std::size_t step = saturating_mul(prev, size);
    work = step > kSaturated - work ? kSaturated : work + step;
    if (work > options.budget) return false;
    prev = size;
  }
  return true;
}

OfflinePlan offline_optimal(const Scenario& s, const std::optional<SlotDecision>& first,
                            const Options& options) {
  const DpWork w = build_layers(s, first, options);
  const std::size_t slots = s.num_slots;

  std::vector<std::vector<double>> cost(slots);
  std::vector<std::vector<std::size_t>> parent(slots);
  for (std::size_t t = 0; t < slots; ++t) {
    const auto& layer = w.layers[t];
    cost[t].assign(layer.size(), kInfinity);
    parent[t].assign(layer.size(), 0);
    for (std::size_t a = 0; a < layer.size(); ++a) {
      const double stage = non_switching_delay(s, t, layer[a]);
      if (t == 0) {
        cost[t][a] = stage;
        continue;
      }
      const auto& before = w.layers[t - 1];
      double best = kInfinity;
      std::size_t arg = 0;
      for (std::size_t b = 0; b < before.size(); ++b) {
        const double v = cost[t - 1][b] + switching_delay(s, layer[a], before[b]);
        if (b == 0 || better(v, best)) {
          best = v;
          arg = b;
        }
      }
      cost[t][a] = best + stage;
      parent[t][a] = arg;
    }
  }

  std::size_t end = 0;
  for (std::size_t a = 1; a < cost[slots - 1].size(); ++a) {
    if (better(cost[slots - 1][a], cost[slots - 1][end])) end = a;
  }
  OfflinePlan plan;
  plan.decisions.resize(slots);
  std::size_t cur = end;
  for (std::size_t t = slots; t-- > 0;) {
    plan.decisions[t] = w.layers[t][cur];
    cur = parent[t][cur];
  }
  // Re-evaluate along the chosen path so the total is an exact slot sum.
  for (std::size_t t = 0; t < slots; ++t) {
    plan.total += total_delay(s, t, plan.decisions[t], t == 0 ? nullptr : &plan.decisions[t - 1])
                      .total;
  }
  return plan;
}

}  // namespace mecsim::oracle
