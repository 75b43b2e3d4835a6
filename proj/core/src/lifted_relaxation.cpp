#include "mecsim/lifted_relaxation.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "line_search.hpp"
#include "mecsim/errors.hpp"

namespace mecsim {

JointPolytope JointPolytope::for_slot(const Scenario& s, std::size_t t, double margin) {
  if (t >= s.num_slots) throw DimensionMismatch(fmt::format("slot {} out of range", t));
  JointPolytope p;
  const std::size_t m = s.num_clouds;
  const std::size_t n = s.num_users;
  p.num_clouds_ = m;
  p.num_users_ = n;
  p.coverage_ = s.coverage[t];
  std::size_t next = 0;
  for (std::size_t k = 0; k < n; ++k) {
    p.offset_.push_back(next);
    next += p.coverage_[k].size() * m;
  }
  lp::LinearProgram& prog = p.program_;
  prog.num_vars = next;
  prog.cost.assign(next, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    lp::Row row;
    row.rhs = 1.0;
    for (std::size_t v = p.offset_[k]; v < p.offset_[k] + p.coverage_[k].size() * m; ++v) {
      row.terms.emplace_back(v, 1.0);
    }
    prog.rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < m; ++i) {
    lp::Row row;
    row.sense = lp::RowSense::kLessEqual;
    row.rhs = s.cloud_capacity[i];
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t a = 0; a < p.coverage_[k].size(); ++a) {
        row.terms.emplace_back(p.index(i, a, k), s.service_size[k]);
      }
    }
    prog.rows.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < m; ++j) {
    lp::Row row;
    row.sense = lp::RowSense::kLessEqual;
    row.rhs = s.bs_capacity[j] - margin;
    for (std::size_t k = 0; k < n; ++k) {
      const auto& cov = p.coverage_[k];
      const auto it = std::lower_bound(cov.begin(), cov.end(), j);
      if (it == cov.end() || *it != j) continue;
      const auto a = static_cast<std::size_t>(it - cov.begin());
      for (std::size_t i = 0; i < m; ++i) row.terms.emplace_back(p.index(i, a, k), s.demand[t][k]);
    }
    prog.rows.push_back(std::move(row));
  }
  return p;
}

FractionalDecision JointPolytope::marginals(const std::vector<double>& w) const {
  FractionalDecision d{Matrix(num_clouds_, num_users_), Matrix(num_clouds_, num_users_)};
  for (std::size_t k = 0; k < num_users_; ++k) {
    for (std::size_t a = 0; a < coverage_[k].size(); ++a) {
      for (std::size_t i = 0; i < num_clouds_; ++i) {
        const double v = w[index(i, a, k)];
        d.x(i, k) += v;
        d.y(coverage_[k][a], k) += v;
      }
    }
  }
  return d;
}

std::vector<double> JointPolytope::product(const FractionalDecision& d) const {
  std::vector<double> w(num_vars(), 0.0);
  for (std::size_t k = 0; k < num_users_; ++k) {
    for (std::size_t a = 0; a < coverage_[k].size(); ++a) {
      for (std::size_t i = 0; i < num_clouds_; ++i) {
        w[index(i, a, k)] = d.x(i, k) * d.y(coverage_[k][a], k);
      }
    }
  }
  return w;
}

namespace {

struct StationTotals {
  std::vector<double> headroom;  // C_j - L_j
  std::vector<double> squares;   // sum_k y(j,k)^2
};

StationTotals station_totals(const Scenario& s, std::size_t t, const FractionalDecision& m) {
  StationTotals tot{std::vector<double>(s.num_clouds), std::vector<double>(s.num_clouds, 0.0)};
  std::vector<double> load(s.num_clouds, 0.0);
  for (std::size_t k = 0; k < s.num_users; ++k) {
    for (std::size_t j = 0; j < s.num_clouds; ++j) {
      load[j] += s.demand[t][k] * m.y(j, k);
      tot.squares[j] += m.y(j, k) * m.y(j, k);
    }
  }
  for (std::size_t j = 0; j < s.num_clouds; ++j) tot.headroom[j] = s.bs_capacity[j] - load[j];
  return tot;
}

double communication(const Scenario& s, std::size_t t, const JointPolytope& p,
                     const std::vector<double>& w) {
  double total = 0.0;
  for (std::size_t k = 0; k < s.num_users; ++k) {
    const auto& cov = p.coverage(k);
    for (std::size_t a = 0; a < cov.size(); ++a) {
      for (std::size_t i = 0; i < s.num_clouds; ++i) {
        total += w[p.index(i, a, k)] * s.latency(t, cov[a], i);
      }
    }
  }
  return total;
}

}  // namespace

double joint_objective(const Scenario& s, std::size_t t, const JointPolytope& p,
                       const std::vector<double>& w) {
  const FractionalDecision m = p.marginals(w);
  const StationTotals tot = station_totals(s, t, m);
  double queuing = 0.0;
  for (std::size_t j = 0; j < s.num_clouds; ++j) {
    if (tot.squares[j] == 0.0) continue;
    if (tot.headroom[j] <= 0.0) return kInfinity;
    queuing += tot.squares[j] / tot.headroom[j];
  }
  return queuing + communication(s, t, p, w);
}

std::vector<double> joint_gradient(const Scenario& s, std::size_t t, const JointPolytope& p,
                                   const std::vector<double>& w) {
  const FractionalDecision m = p.marginals(w);
  const StationTotals tot = station_totals(s, t, m);
  std::vector<double> g(p.num_vars(), 0.0);
  for (std::size_t k = 0; k < s.num_users; ++k) {
    const auto& cov = p.coverage(k);
    for (std::size_t a = 0; a < cov.size(); ++a) {
      const std::size_t j = cov[a];
      const double h = tot.headroom[j];
      if (h <= 0.0) throw OverloadedPoint(fmt::format("base station {} saturated", j));
      const double dq = 2.0 * m.y(j, k) / h + s.demand[t][k] * tot.squares[j] / (h * h);
      for (std::size_t i = 0; i < s.num_clouds; ++i) {
        g[p.index(i, a, k)] = dq + s.latency(t, j, i);
      }
    }
  }
  return g;
}

RelaxationBound solve_relaxation_bound(const Scenario& s, std::size_t t,
                                       const FractionalDecision& start,
                                       const SolverConfig& config) {
  const JointPolytope poly = JointPolytope::for_slot(s, t, config.margin);
  lp::LinearProgram prog = poly.program();

  std::vector<double> w = poly.product(start);
  double f = joint_objective(s, t, poly, w);
  if (!std::isfinite(f)) throw NoInteriorPoint(fmt::format("slot {}: start is saturated", t));

  RelaxationBound out;
  for (std::size_t iter = 0;; ++iter) {
    const std::vector<double> g = joint_gradient(s, t, poly, w);
    prog.cost = g;
    const std::vector<double> v = lp::solve(prog).values;
    double gap = 0.0;
    for (std::size_t e = 0; e < w.size(); ++e) gap += g[e] * (w[e] - v[e]);
    out.gap = std::max(gap, 0.0);
    out.iterations = iter;
    if (out.gap <= config.gap_tolerance * f || iter >= config.max_iterations) break;

    auto along = [&](double step) {
      std::vector<double> p = w;
      for (std::size_t e = 0; e < p.size(); ++e) p[e] += step * (v[e] - p[e]);
      return joint_objective(s, t, poly, p);
    };
    const auto [step, fn] = detail::golden_section(along, 0.0, 1.0);
    if (!(fn < f)) break;
    for (std::size_t e = 0; e < w.size(); ++e) w[e] += step * (v[e] - w[e]);
    f = fn;
  }
  out.objective = f;
  out.marginals = poly.marginals(w);
  return out;
}

}  // namespace mecsim
