#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace mecsim::lp {

enum class RowSense { kEqual, kLessEqual };

struct Row {
  std::vector<std::pair<std::size_t, double>> terms;  // (variable, coefficient)
  RowSense sense = RowSense::kEqual;
  double rhs = 0.0;
};

/// minimize cost^T v  subject to rows, v >= 0.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<double> cost;
  std::vector<Row> rows;
};

struct Options {
  double pivot_tolerance = 1e-9;
  double feasibility_tolerance = 1e-9;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  std::size_t degenerate_switch = 50;
};

struct Solution {
  std::vector<double> values;
  double objective = 0.0;
  std::size_t pivots = 0;
};

/// Two-phase primal simplex on a dense tableau. Returns a basic optimal
/// solution; throws Infeasible when no point satisfies the rows and
/// mecsim::Error when the objective is unbounded below.
Solution solve(const LinearProgram& program, const Options& options = {});

/// Largest absolute violation of any row or nonnegativity bound.
double max_residual(const LinearProgram& program, const std::vector<double>& values);

}  // namespace mecsim::lp
