#include "mecsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "mecsim/errors.hpp"

namespace mecsim {

EmptyCoverage::EmptyCoverage(std::size_t user, std::size_t slot)
    : Error(fmt::format("empty coverage for user {} in slot {}", user, slot)),
      user_(user),
      slot_(slot) {}

namespace {

void expect_size(std::size_t actual, std::size_t expected, const std::string& what) {
  if (actual != expected) {
    throw DimensionMismatch(
        fmt::format("{}: expected {} entries, got {}", what, expected, actual));
  }
}

void expect_positive(const std::vector<double>& values, const std::string& what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw NonPositiveCapacity(fmt::format("{}[{}] = {} must be positive", what, i, values[i]));
    }
  }
}

}  // namespace

Scenario validate_scenario(Scenario raw) {
  const std::size_t m = raw.num_clouds;
  const std::size_t n = raw.num_users;
  const std::size_t slots = raw.num_slots;
  if (m == 0) throw DimensionMismatch("num_clouds must be at least 1");
  if (slots == 0) throw DimensionMismatch("num_slots must be at least 1");

  expect_size(raw.bs_capacity.size(), m, "bs_capacity");
  expect_size(raw.cloud_capacity.size(), m, "cloud_capacity");
  expect_size(raw.service_size.size(), n, "service_size");
  expect_size(raw.link_latency.size(), slots, "link_latency");
  expect_size(raw.coverage.size(), slots, "coverage");
  expect_size(raw.demand.size(), slots, "demand");

  expect_positive(raw.bs_capacity, "bs_capacity");
  expect_positive(raw.cloud_capacity, "cloud_capacity");
  for (std::size_t k = 0; k < n; ++k) {
    if (!(raw.service_size[k] > 0.0) || !std::isfinite(raw.service_size[k])) {
      throw NegativeValue(fmt::format("service_size[{}] must be positive", k));
    }
  }

  for (std::size_t t = 0; t < slots; ++t) {
    const Matrix& lat = raw.link_latency[t];
    if (lat.rows() != m || lat.cols() != m) {
      throw DimensionMismatch(fmt::format("link_latency[{}] must be {}x{}, got {}x{}", t, m, m,
                                          lat.rows(), lat.cols()));
    }
    for (double v : lat.values()) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw NegativeValue(fmt::format("link_latency[{}] has invalid entry {}", t, v));
      }
    }
    expect_size(raw.demand[t].size(), n, fmt::format("demand[{}]", t));
    for (std::size_t k = 0; k < n; ++k) {
      const double c = raw.demand[t][k];
      if (!(c > 0.0) || !std::isfinite(c)) {
        throw NegativeValue(fmt::format("demand[{}][{}] = {} must be positive", t, k, c));
      }
    }
    expect_size(raw.coverage[t].size(), n, fmt::format("coverage[{}]", t));
    for (std::size_t k = 0; k < n; ++k) {
      auto& set = raw.coverage[t][k];
      if (set.empty()) throw EmptyCoverage(k, t);
      std::sort(set.begin(), set.end());
      set.erase(std::unique(set.begin(), set.end()), set.end());
      if (set.back() >= m) {
        throw DimensionMismatch(
            fmt::format("coverage[{}][{}] references station {} >= {}", t, k, set.back(), m));
      }
    }
  }

  if (raw.geometry) {
    const Geometry& g = *raw.geometry;
    expect_size(g.stations.size(), m, "geometry.stations");
    expect_size(g.user_positions.size(), slots, "geometry.user_positions");
    for (std::size_t t = 0; t < slots; ++t) {
      expect_size(g.user_positions[t].size(), n, fmt::format("geometry.user_positions[{}]", t));
    }
  }
  return raw;
}

std::vector<double> station_loads(const Scenario& s, std::size_t t, const SlotDecision& d) {
  std::vector<double> load(s.num_clouds, 0.0);
  for (std::size_t k = 0; k < d.selection.size(); ++k) load[d.selection[k]] += s.demand[t][k];
  return load;
}

std::vector<double> cloud_usage(const Scenario& s, const SlotDecision& d) {
  std::vector<double> used(s.num_clouds, 0.0);
  for (std::size_t k = 0; k < d.placement.size(); ++k) used[d.placement[k]] += s.service_size[k];
  return used;
}

bool decision_feasible(const Scenario& s, std::size_t t, const SlotDecision& d, double margin) {
  if (t >= s.num_slots) return false;
  if (d.placement.size() != s.num_users || d.selection.size() != s.num_users) return false;
  for (std::size_t k = 0; k < s.num_users; ++k) {
    if (d.placement[k] >= s.num_clouds) return false;
    if (d.selection[k] >= s.num_clouds || !s.covers(t, k, d.selection[k])) return false;
  }
  const auto used = cloud_usage(s, d);
  const auto load = station_loads(s, t, d);
  for (std::size_t i = 0; i < s.num_clouds; ++i) {
    if (used[i] > s.cloud_capacity[i]) return false;
    if (load[i] > s.bs_capacity[i] - margin) return false;
  }
  return true;
}

}  // namespace mecsim
