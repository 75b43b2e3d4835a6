#include "mecsim/relaxed_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "mecsim/delay.hpp"
#include "mecsim/errors.hpp"
#include "mecsim/lifted_relaxation.hpp"
#include "mecsim/rng.hpp"
#include "line_search.hpp"

namespace mecsim {

// ---------------------------------------------------------------------------
// Polytope

Polytope Polytope::for_slot(const Scenario& s, std::size_t t, double margin) {
  if (t >= s.num_slots) throw DimensionMismatch(fmt::format("slot {} out of range", t));
  Polytope p;
  const std::size_t m = s.num_clouds;
  const std::size_t n = s.num_users;
  p.num_clouds_ = m;
  p.num_users_ = n;
  p.coverage_ = s.coverage[t];
  p.storage_limit_ = s.cloud_capacity;
  p.load_limit_.resize(m);
  for (std::size_t j = 0; j < m; ++j) p.load_limit_[j] = s.bs_capacity[j] - margin;
  p.service_size_ = s.service_size;
  p.demand_ = s.demand[t];

  std::size_t next = m * n;
  p.y_offset_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    p.y_offset_[k] = next;
    next += p.coverage_[k].size();
  }

  lp::LinearProgram& prog = p.program_;
  prog.num_vars = next;
  prog.cost.assign(next, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    lp::Row row;
    row.rhs = 1.0;
    for (std::size_t i = 0; i < m; ++i) row.terms.emplace_back(k * m + i, 1.0);
    prog.rows.push_back(std::move(row));
  }
  for (std::size_t k = 0; k < n; ++k) {
    lp::Row row;
    row.rhs = 1.0;
    for (std::size_t a = 0; a < p.coverage_[k].size(); ++a) {
      row.terms.emplace_back(p.y_offset_[k] + a, 1.0);
    }
    prog.rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < m; ++i) {
    lp::Row row;
    row.sense = lp::RowSense::kLessEqual;
    row.rhs = p.storage_limit_[i];
    for (std::size_t k = 0; k < n; ++k) row.terms.emplace_back(k * m + i, p.service_size_[k]);
    prog.rows.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < m; ++j) {
    lp::Row row;
    row.sense = lp::RowSense::kLessEqual;
    row.rhs = p.load_limit_[j];
    for (std::size_t k = 0; k < n; ++k) {
      const auto& cov = p.coverage_[k];
      const auto it = std::lower_bound(cov.begin(), cov.end(), j);
      if (it != cov.end() && *it == j) {
        row.terms.emplace_back(p.y_offset_[k] + static_cast<std::size_t>(it - cov.begin()),
                               p.demand_[k]);
      }
    }
    prog.rows.push_back(std::move(row));
  }
  return p;
}

std::vector<double> Polytope::pack(const FractionalDecision& d) const {
  std::vector<double> values(program_.num_vars, 0.0);
  for (std::size_t k = 0; k < num_users_; ++k) {
    for (std::size_t i = 0; i < num_clouds_; ++i) values[k * num_clouds_ + i] = d.x(i, k);
    for (std::size_t a = 0; a < coverage_[k].size(); ++a) {
      values[y_offset_[k] + a] = d.y(coverage_[k][a], k);
    }
  }
  return values;
}

FractionalDecision Polytope::unpack(const std::vector<double>& values) const {
  FractionalDecision d{Matrix(num_clouds_, num_users_), Matrix(num_clouds_, num_users_)};
  for (std::size_t k = 0; k < num_users_; ++k) {
    for (std::size_t i = 0; i < num_clouds_; ++i) d.x(i, k) = values[k * num_clouds_ + i];
    for (std::size_t a = 0; a < coverage_[k].size(); ++a) {
      d.y(coverage_[k][a], k) = values[y_offset_[k] + a];
    }
  }
  return d;
}

double Polytope::max_residual(const FractionalDecision& d) const {
  if (d.x.rows() != num_clouds_ || d.x.cols() != num_users_ || d.y.rows() != num_clouds_ ||
      d.y.cols() != num_users_) {
    throw DimensionMismatch("fractional decision has the wrong shape");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < num_users_; ++k) {
    worst = std::max(worst, std::abs(d.x.column_sum(k) - 1.0));
    worst = std::max(worst, std::abs(d.y.column_sum(k) - 1.0));
    for (std::size_t j = 0; j < num_clouds_; ++j) {
      worst = std::max({worst, -d.x(j, k), -d.y(j, k)});
      if (!std::binary_search(coverage_[k].begin(), coverage_[k].end(), j)) {
        worst = std::max(worst, std::abs(d.y(j, k)));
      }
    }
  }
  for (std::size_t i = 0; i < num_clouds_; ++i) {
    double used = 0.0;
    double load = 0.0;
    for (std::size_t k = 0; k < num_users_; ++k) {
      used += service_size_[k] * d.x(i, k);
      load += demand_[k] * d.y(i, k);
    }
    worst = std::max({worst, used - storage_limit_[i], load - load_limit_[i]});
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Gradient and linear subproblem

Gradient objective_gradient(const Scenario& s, std::size_t t, const Matrix& x, const Matrix& y) {
  const std::size_t m = s.num_clouds;
  const std::size_t n = s.num_users;
  if (x.rows() != m || x.cols() != n || y.rows() != m || y.cols() != n) {
    throw DimensionMismatch("gradient point has the wrong shape");
  }
  const auto& demand = s.demand[t];
  const Matrix& lat = s.link_latency[t];
  std::vector<double> load(m, 0.0);
  std::vector<double> mass(m, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      load[j] += demand[k] * y(j, k);
      mass[j] += y(j, k);
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (load[j] >= s.bs_capacity[j]) {
      throw OverloadedPoint(fmt::format("base station {} load {} >= capacity {}", j, load[j],
                                        s.bs_capacity[j]));
    }
  }

  Gradient g{Matrix(m, n), Matrix(m, n)};
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      double sum = 0.0;
      for (std::size_t j : s.coverage[t][k]) sum += y(j, k) * lat(j, i);
      g.x(i, k) = sum;
    }
    for (std::size_t j : s.coverage[t][k]) {
      const double headroom = s.bs_capacity[j] - load[j];
      double comm = 0.0;
      for (std::size_t i = 0; i < m; ++i) comm += x(i, k) * lat(j, i);
      g.y(j, k) = 1.0 / headroom + demand[k] * mass[j] / (headroom * headroom) + comm;
    }
  }
  return g;
}

FractionalDecision lp_solve(const Polytope& p, const Matrix& cost_x, const Matrix& cost_y) {
  lp::LinearProgram prog = p.program();
  FractionalDecision costs{cost_x, cost_y};
  if (cost_x.rows() != p.num_clouds() || cost_x.cols() != p.num_users() ||
      cost_y.rows() != p.num_clouds() || cost_y.cols() != p.num_users()) {
    throw DimensionMismatch("cost matrices have the wrong shape");
  }
  prog.cost = p.pack(costs);
  return p.unpack(lp::solve(prog).values);
}

// ---------------------------------------------------------------------------
// Starting points

namespace {

// Proportional scaling of overloaded rows, with the removed mass of each user
// spread over rows of its support that still have room. Returns true once
// every row load is within its limit.
bool rebalance(Matrix& a, const std::vector<double>& weight, const std::vector<double>& limit,
               const std::vector<std::vector<std::size_t>>& support) {
  const std::size_t rows = a.rows();
  const std::size_t users = a.cols();
  auto loads = [&] {
    std::vector<double> load(rows, 0.0);
    for (std::size_t k = 0; k < users; ++k) {
      for (std::size_t r = 0; r < rows; ++r) load[r] += weight[k] * a(r, k);
    }
    return load;
  };

  for (int round = 0; round < 500; ++round) {
    std::vector<double> load = loads();
    std::vector<double> excess(users, 0.0);
    bool over = false;
    for (std::size_t r = 0; r < rows; ++r) {
      if (load[r] <= limit[r]) continue;
      over = true;
      const double keep = limit[r] > 0.0 ? limit[r] / load[r] : 0.0;
      for (std::size_t k = 0; k < users; ++k) {
        const double moved = a(r, k) * (1.0 - keep);
        a(r, k) -= moved;
        excess[k] += moved;
      }
    }
    if (!over) return true;

    load = loads();
    for (std::size_t k = 0; k < users; ++k) {
      if (excess[k] <= 0.0) continue;
      double total_spare = 0.0;
      for (std::size_t r : support[k]) total_spare += std::max(limit[r] - load[r], 0.0);
      if (total_spare <= 0.0) return false;
      for (std::size_t r : support[k]) {
        const double share = excess[k] * std::max(limit[r] - load[r], 0.0) / total_spare;
        a(r, k) += share;
        load[r] += weight[k] * share;
      }
    }
  }
  return false;
}

FractionalDecision project_into(const Scenario& s, std::size_t t, const Polytope& p,
                                FractionalDecision d) {
  std::vector<std::vector<std::size_t>> all_clouds(
      s.num_users, std::vector<std::size_t>(s.num_clouds));
  for (auto& v : all_clouds) std::iota(v.begin(), v.end(), std::size_t{0});
  rebalance(d.x, s.service_size, p.storage_limit(), all_clouds);
  rebalance(d.y, s.demand[t], p.load_limit(), s.coverage[t]);
  return d;
}

double inner(const Gradient& g, const FractionalDecision& a, const FractionalDecision& b) {
  double sum = 0.0;
  const auto gx = g.x.values();
  const auto gy = g.y.values();
  const auto ax = a.x.values();
  const auto bx = b.x.values();
  const auto ay = a.y.values();
  const auto by = b.y.values();
  for (std::size_t e = 0; e < gx.size(); ++e) sum += gx[e] * (ax[e] - bx[e]);
  for (std::size_t e = 0; e < gy.size(); ++e) sum += gy[e] * (ay[e] - by[e]);
  return sum;
}

FractionalDecision lerp(const FractionalDecision& from, const FractionalDecision& to,
                        double step) {
  FractionalDecision out = from;
  auto ox = out.x.values();
  auto oy = out.y.values();
  const auto tx = to.x.values();
  const auto ty = to.y.values();
  for (std::size_t e = 0; e < ox.size(); ++e) ox[e] += step * (tx[e] - ox[e]);
  for (std::size_t e = 0; e < oy.size(); ++e) oy[e] += step * (ty[e] - oy[e]);
  return out;
}

}  // namespace

FractionalDecision uniform_point(const Scenario& s, std::size_t t) {
  FractionalDecision d{Matrix(s.num_clouds, s.num_users), Matrix(s.num_clouds, s.num_users)};
  for (std::size_t k = 0; k < s.num_users; ++k) {
    for (std::size_t i = 0; i < s.num_clouds; ++i) d.x(i, k) = 1.0 / double(s.num_clouds);
    const auto& cov = s.coverage[t][k];
    for (std::size_t j : cov) d.y(j, k) = 1.0 / double(cov.size());
  }
  return d;
}

FractionalDecision blend_warm_start(const Scenario& s, std::size_t t, const SlotDecision& warm) {
  if (warm.placement.size() != s.num_users || warm.selection.size() != s.num_users) {
    throw DimensionMismatch("warm start must cover every user");
  }
  FractionalDecision d = uniform_point(s, t);
  for (std::size_t k = 0; k < s.num_users; ++k) {
    if (warm.placement[k] >= s.num_clouds) throw DimensionMismatch("warm placement out of range");
    for (std::size_t i = 0; i < s.num_clouds; ++i) d.x(i, k) *= 0.1;
    d.x(warm.placement[k], k) += 0.9;
    if (s.covers(t, k, warm.selection[k])) {
      for (std::size_t j : s.coverage[t][k]) d.y(j, k) *= 0.1;
      d.y(warm.selection[k], k) += 0.9;
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Conditional gradient

namespace {

struct Descent {
  FractionalDecision point;
  double objective = 0.0;
  double gap = 0.0;
  std::size_t iterations = 0;
  std::vector<double> trace;
};

Descent descend(const Scenario& s, std::size_t t, const Polytope& poly, FractionalDecision z,
                double f, const SolverConfig& config) {
  Descent out;
  out.trace.push_back(f);
  for (std::size_t iter = 0;; ++iter) {
    const Gradient g = objective_gradient(s, t, z.x, z.y);
    const FractionalDecision v = lp_solve(poly, g.x, g.y);
    const double gap = std::max(inner(g, z, v), 0.0);
    out.gap = gap;
    out.iterations = iter;
    if (gap <= config.gap_tolerance * f || iter >= config.max_iterations) break;

    // Open-loop step with halving fallback, compared against a golden-section
    // search along the same segment; the lower objective wins.
    auto along = [&](double step) {
      const FractionalDecision p = lerp(z, v, step);
      return non_switching_delay(s, t, p.x, p.y);
    };
    double best_step = 0.0;
    double best_f = f;
    double step = 2.0 / (double(iter) + 2.0);
    for (std::size_t h = 0; h <= config.max_step_halvings; ++h, step *= 0.5) {
      const double fn = along(step);
      if (fn <= f) {
        best_step = step;
        best_f = fn;
        break;
      }
    }
    const auto [ls_step, ls_f] = detail::golden_section(along, 0.0, 1.0);
    if (ls_f < best_f) {
      best_step = ls_step;
      best_f = ls_f;
    }
    if (best_step == 0.0) break;
    z = lerp(z, v, best_step);
    f = best_f;
    out.trace.push_back(f);
  }
  out.objective = f;
  out.point = std::move(z);
  return out;
}

// Interior point with random column weights, pulled into the polytope.
FractionalDecision random_point(const Scenario& s, std::size_t t, const Polytope& poly, Rng& rng) {
  FractionalDecision d{Matrix(s.num_clouds, s.num_users), Matrix(s.num_clouds, s.num_users)};
  for (std::size_t k = 0; k < s.num_users; ++k) {
    double sx = 0.0;
    for (std::size_t i = 0; i < s.num_clouds; ++i) sx += d.x(i, k) = uniform(rng, 0.05, 1.0);
    for (std::size_t i = 0; i < s.num_clouds; ++i) d.x(i, k) /= sx;
    double sy = 0.0;
    for (std::size_t j : s.coverage[t][k]) sy += d.y(j, k) = uniform(rng, 0.05, 1.0);
    for (std::size_t j : s.coverage[t][k]) d.y(j, k) /= sy;
  }
  if (poly.max_residual(d) > 0.0) d = project_into(s, t, poly, d);
  return d;
}

SlotDecision argmax_decision(const Scenario& s, std::size_t t, const FractionalDecision& d) {
  SlotDecision out;
  for (std::size_t k = 0; k < s.num_users; ++k) {
    std::size_t bi = 0;
    for (std::size_t i = 1; i < s.num_clouds; ++i) {
      if (d.x(i, k) > d.x(bi, k)) bi = i;
    }
    const auto& cov = s.coverage[t][k];
    std::size_t bj = cov.front();
    for (std::size_t j : cov) {
      if (d.y(j, k) > d.y(bj, k)) bj = j;
    }
    out.placement.push_back(bi);
    out.selection.push_back(bj);
  }
  return out;
}

// Best-improvement search over one-user moves, then two-user moves when the
// neighbourhood is small enough. Stays within feasible decisions.
SlotDecision local_search(const Scenario& s, std::size_t t, SlotDecision d, double margin,
                          std::size_t pair_limit) {
  const std::size_t n = s.num_users;
  std::size_t options = 0;
  for (std::size_t k = 0; k < n; ++k) options += s.num_clouds * s.coverage[t][k].size();
  const bool pairs = options * options <= pair_limit;

  double current = non_switching_delay(s, t, d);
  while (true) {
    double best = current;
    SlotDecision best_d = d;
    auto consider = [&](const SlotDecision& e) {
      if (!decision_feasible(s, t, e, margin)) return;
      const double v = non_switching_delay(s, t, e);
      if (v < best - 1e-12 * std::max(1.0, best)) {
        best = v;
        best_d = e;
      }
    };
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < s.num_clouds; ++i) {
        for (std::size_t j : s.coverage[t][k]) {
          SlotDecision e = d;
          e.placement[k] = i;
          e.selection[k] = j;
          consider(e);
        }
      }
    }
    if (!(best < current) && pairs) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t q = k + 1; q < n; ++q) {
          for (std::size_t i = 0; i < s.num_clouds; ++i) {
            for (std::size_t j : s.coverage[t][k]) {
              for (std::size_t i2 = 0; i2 < s.num_clouds; ++i2) {
                for (std::size_t j2 : s.coverage[t][q]) {
                  SlotDecision e = d;
                  e.placement[k] = i;
                  e.selection[k] = j;
                  e.placement[q] = i2;
                  e.selection[q] = j2;
                  consider(e);
                }
              }
            }
          }
        }
      }
    }
    if (!(best < current)) return d;
    d = std::move(best_d);
    current = best;
  }
}

}  // namespace

std::pair<FractionalDecision, SolverReport> solve_fractional(
    const Scenario& s, std::size_t t, const std::optional<FractionalDecision>& init,
    const SolverConfig& config) {
  const Polytope poly = Polytope::for_slot(s, t, config.margin);
  const Matrix zero(s.num_clouds, s.num_users);

  FractionalDecision anchor;
  try {
    anchor = lp_solve(poly, zero, zero);
  } catch (const Infeasible&) {
    try {
      lp_solve(Polytope::for_slot(s, t, 0.0), zero, zero);
    } catch (const Infeasible&) {
      throw Infeasible(fmt::format("slot {} admits no fractional decision", t));
    }
    throw NoInteriorPoint(
        fmt::format("slot {} is feasible only at full base-station load", t));
  }

  auto start_value = [&](const FractionalDecision& z) {
    return poly.max_residual(z) <= config.residual_tolerance ? non_switching_delay(s, t, z.x, z.y)
                                                             : kInfinity;
  };

  FractionalDecision z = init ? *init : uniform_point(s, t);
  if (poly.max_residual(z) > config.residual_tolerance) z = project_into(s, t, poly, z);
  double f = start_value(z);
  if (!std::isfinite(f)) {
    z = anchor;
    f = non_switching_delay(s, t, z.x, z.y);
    if (!std::isfinite(f)) throw NoInteriorPoint(fmt::format("slot {} has no finite start", t));
  }

  Descent best = descend(s, t, poly, std::move(z), f, config);
  SolverReport report;
  report.iterations = best.iterations;
  report.objective_trace = best.trace;

  std::vector<FractionalDecision> endpoints{best.point};
  auto consider = [&](Descent d) {
    endpoints.push_back(d.point);
    report.iterations += d.iterations;
    ++report.restarts;
    if (d.objective < best.objective) {
      best = std::move(d);
      report.objective_trace = best.trace;
    }
  };

  // The non-switching delay is not convex, so the first descent may stop in a
  // local minimum. Restart from the minimizer of the convex bound and from
  // seeded interior points; keep the best.
  const RelaxationBound bound = solve_relaxation_bound(s, t, best.point, config);
  report.relaxation_bound = std::max(bound.objective - bound.gap, 0.0);
  FractionalDecision from_bound = bound.marginals;
  if (poly.max_residual(from_bound) > config.residual_tolerance) {
    from_bound = project_into(s, t, poly, from_bound);
  }
  if (const double fb = start_value(from_bound); std::isfinite(fb)) {
    consider(descend(s, t, poly, std::move(from_bound), fb, config));
  }
  Rng rng(derive_seed(config.restart_seed, "restart", t));
  for (std::size_t r = 0; r < config.restarts; ++r) {
    FractionalDecision p = random_point(s, t, poly, rng);
    if (const double fp = start_value(p); std::isfinite(fp)) {
      consider(descend(s, t, poly, std::move(p), fp, config));
    }
  }

  // Integral polish: improve the argmax decision of every endpoint locally and
  // descend from the resulting vertices.
  if (config.polish) {
    std::vector<SlotDecision> seeds;
    endpoints.push_back(bound.marginals);
    for (const FractionalDecision& p : endpoints) {
      const SlotDecision d = argmax_decision(s, t, p);
      if (!decision_feasible(s, t, d, config.margin)) continue;
      SlotDecision polished = local_search(s, t, d, config.margin, config.pair_move_limit);
      if (std::find(seeds.begin(), seeds.end(), polished) == seeds.end()) {
        seeds.push_back(std::move(polished));
      }
    }
    for (const SlotDecision& d : seeds) {
      FractionalDecision p = to_fractional(d, s.num_clouds);
      if (const double fp = start_value(p); std::isfinite(fp)) {
        consider(descend(s, t, poly, std::move(p), fp, config));
      }
    }
  }

  report.objective = best.objective;
  report.gap = best.gap;
  return {std::move(best.point), std::move(report)};
}

// ---------------------------------------------------------------------------
// Rounding

namespace {

std::size_t sample_category(Rng& rng, const Matrix& m, std::size_t col,
                            std::span<const std::size_t> rows) {
  double total = 0.0;
  for (std::size_t r : rows) total += std::max(m(r, col), 0.0);
  const double u = uniform01(rng) * total;
  double cum = 0.0;
  std::size_t last = rows.back();
  for (std::size_t r : rows) {
    const double p = std::max(m(r, col), 0.0);
    if (p <= 0.0) continue;
    last = r;
    cum += p;
    if (u < cum) return r;
  }
  return last;
}

double violation(const Scenario& s, std::size_t t, const SlotDecision& d, double margin) {
  const auto used = cloud_usage(s, d);
  const auto load = station_loads(s, t, d);
  double v = 0.0;
  for (std::size_t i = 0; i < s.num_clouds; ++i) {
    v += std::max(used[i] - s.cloud_capacity[i], 0.0);
    v += std::max(load[i] - (s.bs_capacity[i] - margin), 0.0);
  }
  return v;
}

// Greedy repair: relocate the heaviest user of the most violated resource to
// its cheapest alternative with room. Returns the number of moves.
std::size_t repair(const Scenario& s, std::size_t t, SlotDecision& d, double margin) {
  const std::size_t m = s.num_clouds;
  const std::size_t n = s.num_users;
  const std::size_t limit = 4 * m * n + 16;
  for (std::size_t moves = 0; moves <= limit; ++moves) {
    const auto used = cloud_usage(s, d);
    const auto load = station_loads(s, t, d);

    bool storage = false;
    std::size_t target = m;
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double excess = used[i] - s.cloud_capacity[i];
      if (excess > worst) {
        worst = excess;
        target = i;
        storage = true;
      }
    }
    for (std::size_t j = 0; j < m; ++j) {
      const double excess = load[j] - (s.bs_capacity[j] - margin);
      if (excess > worst) {
        worst = excess;
        target = j;
        storage = false;
      }
    }
    if (target == m) return moves;

    std::vector<std::size_t> users;
    for (std::size_t k = 0; k < n; ++k) {
      if ((storage ? d.placement[k] : d.selection[k]) == target) users.push_back(k);
    }
    const auto& weight = storage ? s.service_size : s.demand[t];
    std::stable_sort(users.begin(), users.end(),
                     [&](std::size_t a, std::size_t b) { return weight[a] > weight[b]; });

    bool moved = false;
    for (std::size_t k : users) {
      std::vector<std::size_t> options;
      if (storage) {
        for (std::size_t i = 0; i < m; ++i) {
          if (i != target && used[i] + s.service_size[k] <= s.cloud_capacity[i]) {
            options.push_back(i);
          }
        }
      } else {
        for (std::size_t j : s.coverage[t][k]) {
          if (j != target && load[j] + s.demand[t][k] <= s.bs_capacity[j] - margin) {
            options.push_back(j);
          }
        }
      }
      std::size_t best = m;
      double best_cost = kInfinity;
      for (std::size_t option : options) {
        SlotDecision trial = d;
        (storage ? trial.placement[k] : trial.selection[k]) = option;
        const double cost = non_switching_delay(s, t, trial);
        if (best == m || cost < best_cost) {
          best = option;
          best_cost = cost;
        }
      }
      if (best != m) {
        (storage ? d.placement[k] : d.selection[k]) = best;
        moved = true;
        break;
      }
    }
    if (!moved) {
      throw RoundingFailed(fmt::format("slot {}: no user on {} {} can be relocated", t,
                                       storage ? "cloud" : "base station", target));
    }
  }
  throw RoundingFailed(fmt::format("slot {}: repair did not converge", t));
}

}  // namespace

std::pair<SlotDecision, SolverReport> round_decision(const Scenario& s, std::size_t t,
                                                     const FractionalDecision& frac,
                                                     std::uint64_t seed,
                                                     const SolverConfig& config) {
  if (frac.x.rows() != s.num_clouds || frac.x.cols() != s.num_users ||
      frac.y.rows() != s.num_clouds || frac.y.cols() != s.num_users) {
    throw DimensionMismatch("fractional decision has the wrong shape");
  }
  std::vector<std::size_t> clouds(s.num_clouds);
  std::iota(clouds.begin(), clouds.end(), std::size_t{0});

  Rng rng(seed);
  SolverReport report;
  SlotDecision best;
  double best_violation = kInfinity;
  for (std::size_t attempt = 1; attempt <= config.max_rounding_attempts; ++attempt) {
    SlotDecision d;
    d.placement.resize(s.num_users);
    d.selection.resize(s.num_users);
    for (std::size_t k = 0; k < s.num_users; ++k) {
      d.placement[k] = sample_category(rng, frac.x, k, clouds);
      d.selection[k] = sample_category(rng, frac.y, k, s.coverage[t][k]);
    }
    report.rounding_attempts = attempt;
    if (decision_feasible(s, t, d, config.margin)) return {std::move(d), std::move(report)};
    const double v = violation(s, t, d, config.margin);
    if (v < best_violation) {
      best_violation = v;
      best = std::move(d);
    }
  }
  if (best.placement.empty() && s.num_users > 0) {
    // No sampling attempts configured; repair the per-column argmax.
    best = argmax_decision(s, t, frac);
  }
  report.repair_actions = repair(s, t, best, config.margin);
  if (!decision_feasible(s, t, best, config.margin)) {
    throw RoundingFailed(fmt::format("slot {}: repaired decision still infeasible", t));
  }
  return {std::move(best), std::move(report)};
}

SlotSolution solve_slot(const Scenario& s, std::size_t t,
                        const std::optional<SlotDecision>& warm_start, std::uint64_t seed,
                        const SolverConfig& config) {
  std::optional<FractionalDecision> init;
  if (warm_start) init = blend_warm_start(s, t, *warm_start);
  auto [frac, report] = solve_fractional(s, t, init, config);
  auto [decision, rounding] = round_decision(s, t, frac, seed, config);
  report.rounding_attempts = rounding.rounding_attempts;
  report.repair_actions = rounding.repair_actions;
  return {std::move(decision), std::move(frac), std::move(report)};
}

}  // namespace mecsim
