#include "mecsim/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "mecsim/errors.hpp"

namespace mecsim::lp {

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), cells_(rows * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return cells_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return cells_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double rhs(std::size_t r) const { return at(r, cols_); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t row, std::size_t col, std::vector<double>& reduced, double& objective) {
    const double p = at(row, col);
    for (std::size_t c = 0; c <= cols_; ++c) at(row, c) /= p;
    at(row, col) = 1.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row) continue;
      const double f = at(r, col);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(row, c);
      at(r, col) = 0.0;
    }
    const double f = reduced[col];
    if (f != 0.0) {
      for (std::size_t c = 0; c < cols_; ++c) reduced[c] -= f * at(row, c);
      objective += f * rhs(row);
      reduced[col] = 0.0;
    }
    basis_[row] = col;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> cells_;
  std::vector<std::size_t> basis_;
};

struct PhaseResult {
  bool unbounded = false;
  std::size_t pivots = 0;
};

// Minimizes with the given reduced costs; `allowed` masks entering columns.
PhaseResult run_phase(Tableau& tab, std::vector<double>& reduced, double& objective,
                      const std::vector<bool>& allowed, const Options& opt) {
  double scale = 1.0;
  for (std::size_t c = 0; c < tab.cols(); ++c) {
    if (allowed[c]) scale = std::max(scale, std::abs(reduced[c]));
  }
  const double optimality_tol = 1e-11 * scale;
  const std::size_t pivot_limit = 200 * (tab.rows() + tab.cols()) + 1000;

  PhaseResult result;
  std::size_t degenerate_run = 0;
  while (true) {
    const bool bland = degenerate_run >= opt.degenerate_switch;
    std::size_t enter = tab.cols();
    double best = -optimality_tol;
    for (std::size_t c = 0; c < tab.cols(); ++c) {
      if (!allowed[c] || reduced[c] >= -optimality_tol) continue;
      if (bland) {
        enter = c;
        break;
      }
      if (reduced[c] < best) {
        best = reduced[c];
        enter = c;
      }
    }
    if (enter == tab.cols()) return result;

    std::size_t leave = tab.rows();
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < tab.rows(); ++r) {
      const double a = tab.at(r, enter);
      if (a <= opt.pivot_tolerance) continue;
      const double ratio = std::max(tab.rhs(r), 0.0) / a;
      if (leave == tab.rows() || ratio < best_ratio - 1e-12) {
        leave = r;
        best_ratio = ratio;
      } else if (ratio <= best_ratio + 1e-12 && tab.basis()[r] < tab.basis()[leave]) {
        // Lowest basic index among ties keeps Bland's rule cycle-free.
        leave = r;
        best_ratio = std::min(best_ratio, ratio);
      }
    }
    if (leave == tab.rows()) {
      result.unbounded = true;
      return result;
    }
    degenerate_run = best_ratio <= 1e-12 ? degenerate_run + 1 : 0;
    tab.pivot(leave, enter, reduced, objective);
    if (++result.pivots > pivot_limit) {
      throw Error(fmt::format("simplex exceeded {} pivots", pivot_limit));
    }
  }
}

}  // namespace

Solution solve(const LinearProgram& program, const Options& options) {
  const std::size_t n = program.num_vars;
  const std::size_t m = program.rows.size();
  if (program.cost.size() != n) throw DimensionMismatch("cost vector length != num_vars");

  std::size_t num_slack = 0;
  for (const auto& row : program.rows) {
    if (row.sense == RowSense::kLessEqual) ++num_slack;
  }
  const std::size_t first_slack = n;
  const std::size_t first_artificial = n + num_slack;
  const std::size_t cols = first_artificial + m;

  Tableau tab(m, cols);
  std::size_t slack = first_slack;
  for (std::size_t r = 0; r < m; ++r) {
    const Row& row = program.rows[r];
    for (const auto& [var, coef] : row.terms) {
      if (var >= n) throw DimensionMismatch("row references unknown variable");
      tab.at(r, var) += coef;
    }
    if (row.sense == RowSense::kLessEqual) tab.at(r, slack++) = 1.0;
    tab.rhs(r) = row.rhs;
    if (row.rhs < 0.0) {
      for (std::size_t c = 0; c < first_artificial; ++c) tab.at(r, c) = -tab.at(r, c);
      tab.rhs(r) = -row.rhs;
    }
    tab.at(r, first_artificial + r) = 1.0;
    tab.basis()[r] = first_artificial + r;
  }

  // Phase 1: minimize the sum of artificials.
  std::vector<double> reduced(cols, 0.0);
  double objective = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < first_artificial; ++c) reduced[c] -= tab.at(r, c);
    objective += tab.rhs(r);
  }
  std::vector<bool> allowed(cols, true);
  Solution solution;
  solution.pivots += run_phase(tab, reduced, objective, allowed, options).pivots;

  double rhs_scale = 1.0;
  for (const auto& row : program.rows) rhs_scale = std::max(rhs_scale, std::abs(row.rhs));
  if (objective > options.feasibility_tolerance * rhs_scale) {
    throw Infeasible(fmt::format("linear program infeasible (phase-1 residual {:.3g})", objective));
  }

  // Drive artificials out of the basis where possible; rows that cannot be
  // pivoted are redundant and keep a zero-valued artificial.
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis()[r] < first_artificial) continue;
    std::size_t best_col = cols;
    double best_abs = options.pivot_tolerance;
    for (std::size_t c = 0; c < first_artificial; ++c) {
      if (std::abs(tab.at(r, c)) > best_abs) {
        best_abs = std::abs(tab.at(r, c));
        best_col = c;
      }
    }
    if (best_col < cols) {
      tab.pivot(r, best_col, reduced, objective);
      ++solution.pivots;
    }
  }

  // Phase 2 on the original costs.
  std::fill(reduced.begin(), reduced.end(), 0.0);
  objective = 0.0;
  for (std::size_t c = 0; c < n; ++c) reduced[c] = program.cost[c];
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t b = tab.basis()[r];
    const double cb = b < n ? program.cost[b] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c < cols; ++c) reduced[c] -= cb * tab.at(r, c);
    objective += cb * tab.rhs(r);
  }
  for (std::size_t c = first_artificial; c < cols; ++c) allowed[c] = false;
  const PhaseResult phase2 = run_phase(tab, reduced, objective, allowed, options);
  solution.pivots += phase2.pivots;
  if (phase2.unbounded) throw Error("linear program unbounded");

  solution.values.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t b = tab.basis()[r];
    if (b < n) solution.values[b] = std::max(tab.rhs(r), 0.0);
  }
  solution.objective = 0.0;
  for (std::size_t c = 0; c < n; ++c) solution.objective += program.cost[c] * solution.values[c];
  return solution;
}

double max_residual(const LinearProgram& program, const std::vector<double>& values) {
  double worst = 0.0;
  for (double v : values) worst = std::max(worst, -v);
  for (const auto& row : program.rows) {
    double lhs = 0.0;
    for (const auto& [var, coef] : row.terms) lhs += coef * values[var];
    const double diff = lhs - row.rhs;
    worst = std::max(worst, row.sense == RowSense::kEqual ? std::abs(diff) : diff);
  }
  return worst;
}

}  // namespace mecsim::lp
