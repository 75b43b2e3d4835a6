#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mecsim/types.hpp"

namespace mecsim {

struct GeneratorConfig {
  // Stations sit on a grid_rows x grid_cols lattice with the given spacing.
  std::size_t grid_rows = 2;
  std::size_t grid_cols = 2;
  double spacing = 1.0;
  double coverage_radius = 0.75;

  // Random-waypoint mobility; one slot is one time unit.
  double speed_min = 0.1;
  double speed_max = 0.3;
  double pause_min = 0.0;
  double pause_max = 2.0;

  double demand_min = 0.5;
  double demand_max = 1.5;
  double size_min = 1.0;
  double size_max = 3.0;
  double bs_capacity_min = 6.0;
  double bs_capacity_max = 10.0;
  double cloud_capacity_min = 6.0;
  double cloud_capacity_max = 10.0;

  double latency_per_hop = 1.0;  // l_ij = latency_per_hop * lattice hop distance

  std::size_t num_users = 3;
  std::size_t num_slots = 10;
  std::uint64_t seed = 0;
};

/// Smallest radius that covers every point of the lattice's bounding box.
double covering_radius(std::size_t rows, std::size_t cols, double spacing);

/// Stations within `radius` of `p`, ascending.
std::vector<std::size_t> coverage_at(const std::vector<Point2>& stations, double radius,
                                     Point2 p);

/// Deterministic synthetic scenario. Throws ConfigError on invalid ranges and
/// UncoverableArea when the radius leaves part of the area uncovered.
Scenario generate(const GeneratorConfig& cfg);

}  // namespace mecsim
