#include "mecsim/delay.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "mecsim/errors.hpp"

namespace mecsim {

namespace {

void check_shape(const Scenario& s, const Matrix& m, const char* name) {
  if (m.rows() != s.num_clouds || m.cols() != s.num_users) {
    throw DimensionMismatch(fmt::format("{} must be {}x{}, got {}x{}", name, s.num_clouds,
                                        s.num_users, m.rows(), m.cols()));
  }
}

void check_decision(const Scenario& s, const SlotDecision& d) {
  if (d.placement.size() != s.num_users || d.selection.size() != s.num_users) {
    throw DimensionMismatch(fmt::format("decision must cover {} users", s.num_users));
  }
}

}  // namespace

double switching_delay(const Scenario& s, const Matrix& x_now, const Matrix& x_prev) {
  check_shape(s, x_now, "x_now");
  check_shape(s, x_prev, "x_prev");
  double total = 0.0;
  for (std::size_t k = 0; k < s.num_users; ++k) {
    for (std::size_t i = 0; i < s.num_clouds; ++i) {
      total += s.service_size[k] * std::max(x_now(i, k) - x_prev(i, k), 0.0);
    }
  }
  return total;
}

double switching_delay(const Scenario& s, const SlotDecision& now, const SlotDecision& prev) {
  check_decision(s, now);
  check_decision(s, prev);
  double total = 0.0;
  for (std::size_t k = 0; k < s.num_users; ++k) {
    if (now.placement[k] != prev.placement[k]) total += s.service_size[k];
  }
  return total;
}

double queuing_delay(const Scenario& s, std::size_t t, const Matrix& y) {
  check_shape(s, y, "y");
  const auto& demand = s.demand[t];
  std::vector<double> load(s.num_clouds, 0.0);
  std::vector<double> mass(s.num_clouds, 0.0);
  for (std::size_t k = 0; k < s.num_users; ++k) {
    for (std::size_t j = 0; j < s.num_clouds; ++j) {
      load[j] += demand[k] * y(j, k);
      mass[j] += y(j, k);
    }
  }
  for (std::size_t j = 0; j < s.num_clouds; ++j) {
    if (mass[j] > 0.0 && load[j] >= s.bs_capacity[j]) return kInfinity;
  }
  double total = 0.0;
  for (std::size_t k = 0; k < s.num_users; ++k) {
    for (std::size_t j = 0; j < s.num_clouds; ++j) {
      if (y(j, k) != 0.0) total += y(j, k) / (s.bs_capacity[j] - load[j]);
    }
  }
  return total;
}

double queuing_delay(const Scenario& s, std::size_t t, const SlotDecision& d) {
  check_decision(s, d);
  std::vector<double> load(s.num_clouds, 0.0);
  for (std::size_t k = 0; k < s.num_users; ++k) load[d.selection[k]] += s.demand[t][k];
  double total = 0.0;
  for (std::size_t k = 0; k < s.num_users; ++k) {
    const std::size_t j = d.selection[k];
    if (load[j] >= s.bs_capacity[j]) return kInfinity;
    total += 1.0 / (s.bs_capacity[j] - load[j]);
  }
  return total;
}

double communication_delay(const Scenario& s, std::size_t t, const Matrix& x, const Matrix& y) {
  check_shape(s, x, "x");
  check_shape(s, y, "y");
  const Matrix& lat = s.link_latency[t];
  double total = 0.0;
  for (std::size_t k = 0; k < s.num_users; ++k) {
    for (std::size_t i = 0; i < s.num_clouds; ++i) {
      if (x(i, k) == 0.0) continue;
      for (std::size_t j : s.coverage[t][k]) total += y(j, k) * x(i, k) * lat(j, i);
    }
  }
  return total;
}

double communication_delay(const Scenario& s, std::size_t t, const SlotDecision& d) {
  check_decision(s, d);
  double total = 0.0;
  for (std::size_t k = 0; k < s.num_users; ++k) {
    total += s.latency(t, d.selection[k], d.placement[k]);
  }
  return total;
}

double non_switching_delay(const Scenario& s, std::size_t t, const Matrix& x, const Matrix& y) {
  return queuing_delay(s, t, y) + communication_delay(s, t, x, y);
}

double non_switching_delay(const Scenario& s, std::size_t t, const SlotDecision& d) {
  return queuing_delay(s, t, d) + communication_delay(s, t, d);
}

DelayBreakdown total_delay(const Scenario& s, std::size_t t, const Matrix& x_now,
                           const Matrix& x_prev, const Matrix& y) {
  return DelayBreakdown::compose(switching_delay(s, x_now, x_prev), queuing_delay(s, t, y),
                                 communication_delay(s, t, x_now, y));
}

DelayBreakdown total_delay(const Scenario& s, std::size_t t, const SlotDecision& now,
                           const SlotDecision* prev) {
  const double sw = prev ? switching_delay(s, now, *prev) : 0.0;
  return DelayBreakdown::compose(sw, queuing_delay(s, t, now), communication_delay(s, t, now));
}

}  // namespace mecsim
