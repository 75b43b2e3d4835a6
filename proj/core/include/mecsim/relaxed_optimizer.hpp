#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mecsim/lp.hpp"
#include "mecsim/scenario.hpp"
#include "mecsim/types.hpp"

namespace mecsim {

struct SolverConfig {
  double margin = kDefaultMargin;
  double gap_tolerance = 1e-4;  // relative to the current objective
  std::size_t max_iterations = 300;
  double residual_tolerance = 1e-8;
  std::size_t max_rounding_attempts = 50;
  std::size_t max_step_halvings = 30;
  /// Extra descents from seeded interior points.
  std::size_t restarts = 8;
  std::uint64_t restart_seed = 0;
  /// Local search over integral decisions, used as further descent starts.
  bool polish = true;
  /// Two-user moves run only while (sum_k M |coverage_k|)^2 stays below this.
  std::size_t pair_move_limit = 40000;
};

struct SolverReport {
  std::size_t iterations = 0;
  double objective = 0.0;
  double gap = 0.0;
  std::size_t rounding_attempts = 0;
  std::size_t repair_actions = 0;
  /// Descents run after the first one.
  std::size_t restarts = 0;
  /// Certified lower bound on the best integral non-switching delay.
  double relaxation_bound = 0.0;
  /// Objective of every accepted iterate, starting point first.
  std::vector<double> objective_trace;
};

/// Relaxed feasible set of one slot: stochastic columns for x and y, cloud
/// storage and base-station capacity (less the margin), y supported on the
/// coverage sets, box bounds implied by nonnegativity.
class Polytope {
 public:
  static Polytope for_slot(const Scenario& s, std::size_t t, double margin = kDefaultMargin);

  std::size_t num_clouds() const { return num_clouds_; }
  std::size_t num_users() const { return num_users_; }
  const std::vector<std::vector<std::size_t>>& coverage() const { return coverage_; }
  const std::vector<double>& storage_limit() const { return storage_limit_; }
  const std::vector<double>& load_limit() const { return load_limit_; }
  const std::vector<double>& service_size() const { return service_size_; }
  const std::vector<double>& demand() const { return demand_; }

  /// Column-major LP encoding: x(i,k) first, then covered y(j,k).
  const lp::LinearProgram& program() const { return program_; }
  std::vector<double> pack(const FractionalDecision& d) const;
  FractionalDecision unpack(const std::vector<double>& values) const;

  /// Largest violation of any constraint, including y mass outside coverage.
  double max_residual(const FractionalDecision& d) const;

 private:
  std::size_t num_clouds_ = 0;
  std::size_t num_users_ = 0;
  std::vector<std::vector<std::size_t>> coverage_;
  std::vector<double> storage_limit_;
  std::vector<double> load_limit_;
  std::vector<double> service_size_;
  std::vector<double> demand_;
  std::vector<std::size_t> y_offset_;  // first y variable of each user
  lp::LinearProgram program_;
};

struct Gradient {
  Matrix x;
  Matrix y;
};

/// Analytic gradient of the non-switching delay. Entries of y outside the
/// coverage sets are left at zero. Throws OverloadedPoint if any L_j >= C_j.
Gradient objective_gradient(const Scenario& s, std::size_t t, const Matrix& x, const Matrix& y);

/// Minimizes <cost_x, x> + <cost_y, y> over the polytope; returns a vertex.
FractionalDecision lp_solve(const Polytope& p, const Matrix& cost_x, const Matrix& cost_y);

/// Conditional-gradient minimization of the non-switching delay over the
/// slot polytope, starting from `init` (projected if needed) or from the
/// uniform point, then restarted from the convex-bound minimizer and from
/// `config.restarts` seeded interior points. Returns the best descent.
std::pair<FractionalDecision, SolverReport> solve_fractional(
    const Scenario& s, std::size_t t, const std::optional<FractionalDecision>& init,
    const SolverConfig& config = {});

/// Samples placement from each x column and selection from each y column,
/// resampling until feasible, then falls back to greedy repair.
std::pair<SlotDecision, SolverReport> round_decision(const Scenario& s, std::size_t t,
                                                     const FractionalDecision& frac,
                                                     std::uint64_t seed,
                                                     const SolverConfig& config = {});

struct SlotSolution {
  SlotDecision decision;
  FractionalDecision fractional;
  SolverReport report;
};

SlotSolution solve_slot(const Scenario& s, std::size_t t,
                        const std::optional<SlotDecision>& warm_start, std::uint64_t seed,
                        const SolverConfig& config = {});

/// Starting point used when no warm start is given: uniform x over all
/// clouds, uniform y over coverage.
FractionalDecision uniform_point(const Scenario& s, std::size_t t);

/// 0.9 * indicator(warm) + 0.1 * uniform point; a selection outside coverage
/// falls back to the uniform column.
FractionalDecision blend_warm_start(const Scenario& s, std::size_t t, const SlotDecision& warm);

}  // namespace mecsim
