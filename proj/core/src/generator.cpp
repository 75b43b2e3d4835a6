#include "mecsim/generator.hpp"

#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

#include "mecsim/errors.hpp"
#include "mecsim/rng.hpp"
#include "mecsim/scenario.hpp"

namespace mecsim {

namespace {

void check_range(double lo, double hi, const char* name, bool positive) {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi) || (positive && !(lo > 0.0)) ||
      lo < 0.0) {
    throw ConfigError(fmt::format("generator.{} range [{}, {}] is invalid", name, lo, hi));
  }
}

struct Walker {
  Point2 pos;
  Point2 target;
  double speed = 0.0;
  double pause = 0.0;
};

class Mobility {
 public:
  Mobility(const GeneratorConfig& cfg, Rng& rng)
      : cfg_(cfg),
        rng_(rng),
        width_(double(cfg.grid_cols - 1) * cfg.spacing),
        height_(double(cfg.grid_rows - 1) * cfg.spacing) {}

  Point2 random_point() { return {uniform(rng_, 0.0, width_), uniform(rng_, 0.0, height_)}; }

  Walker spawn() {
    Walker w;
    w.pos = random_point();
    new_leg(w);
    return w;
  }

  // Moves the walker forward by one slot.
  void advance(Walker& w) {
    double remaining = 1.0;
    for (int guard = 0; remaining > 1e-12 && guard < 64; ++guard) {
      if (w.pause > 0.0) {
        const double used = std::min(w.pause, remaining);
        w.pause -= used;
        remaining -= used;
        if (w.pause <= 0.0) new_leg(w);
        continue;
      }
      const double dx = w.target.x - w.pos.x;
      const double dy = w.target.y - w.pos.y;
      const double dist = std::hypot(dx, dy);
      const double needed = dist / w.speed;
      if (needed <= remaining) {
        w.pos = w.target;
        remaining -= needed;
        w.pause = uniform(rng_, cfg_.pause_min, cfg_.pause_max);
        if (w.pause <= 0.0) new_leg(w);
      } else {
        const double f = w.speed * remaining / dist;
        w.pos.x += dx * f;
        w.pos.y += dy * f;
        remaining = 0.0;
      }
    }
  }

 private:
  void new_leg(Walker& w) {
    w.target = random_point();
    w.speed = uniform(rng_, cfg_.speed_min, cfg_.speed_max);
  }

  const GeneratorConfig& cfg_;
  Rng& rng_;
  double width_;
  double height_;
};

}  // namespace

double covering_radius(std::size_t rows, std::size_t cols, double spacing) {
  const double half_x = cols > 1 ? spacing / 2.0 : 0.0;
  const double half_y = rows > 1 ? spacing / 2.0 : 0.0;
  return std::hypot(half_x, half_y);
}

std::vector<std::size_t> coverage_at(const std::vector<Point2>& stations, double radius,
                                     Point2 p) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < stations.size(); ++j) {
    if (std::hypot(stations[j].x - p.x, stations[j].y - p.y) <= radius + 1e-9) out.push_back(j);
  }
  return out;
}

Scenario generate(const GeneratorConfig& cfg) {
  if (cfg.grid_rows == 0 || cfg.grid_cols == 0) throw ConfigError("generator grid must be nonempty");
  if (!(cfg.spacing > 0.0)) throw ConfigError("generator.spacing must be positive");
  if (cfg.num_slots == 0) throw ConfigError("generator.num_slots must be at least 1");
  check_range(cfg.speed_min, cfg.speed_max, "speed", true);
  check_range(cfg.pause_min, cfg.pause_max, "pause", false);
  check_range(cfg.demand_min, cfg.demand_max, "demand", true);
  check_range(cfg.size_min, cfg.size_max, "size", true);
  check_range(cfg.bs_capacity_min, cfg.bs_capacity_max, "bs_capacity", true);
  check_range(cfg.cloud_capacity_min, cfg.cloud_capacity_max, "cloud_capacity", true);
  if (!(cfg.latency_per_hop >= 0.0)) throw ConfigError("generator.latency_per_hop must be >= 0");

  const double needed = covering_radius(cfg.grid_rows, cfg.grid_cols, cfg.spacing);
  if (cfg.coverage_radius < needed) {
    throw UncoverableArea(fmt::format("coverage radius {} leaves gaps; at least {} is needed",
                                      cfg.coverage_radius, needed));
  }

  const std::size_t m = cfg.grid_rows * cfg.grid_cols;
  const std::size_t n = cfg.num_users;
  Rng rng(derive_seed(cfg.seed, "generate"));

  Scenario s;
  s.num_clouds = m;
  s.num_users = n;
  s.num_slots = cfg.num_slots;

  Geometry geo;
  geo.coverage_radius = cfg.coverage_radius;
  for (std::size_t r = 0; r < cfg.grid_rows; ++r) {
    for (std::size_t c = 0; c < cfg.grid_cols; ++c) {
      geo.stations.push_back({double(c) * cfg.spacing, double(r) * cfg.spacing});
    }
  }

  Matrix lat(m, m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const auto hops = std::abs(long(a / cfg.grid_cols) - long(b / cfg.grid_cols)) +
                        std::abs(long(a % cfg.grid_cols) - long(b % cfg.grid_cols));
      lat(a, b) = cfg.latency_per_hop * double(hops);
    }
  }

  for (std::size_t j = 0; j < m; ++j) {
    s.bs_capacity.push_back(uniform(rng, cfg.bs_capacity_min, cfg.bs_capacity_max));
  }
  for (std::size_t i = 0; i < m; ++i) {
    s.cloud_capacity.push_back(uniform(rng, cfg.cloud_capacity_min, cfg.cloud_capacity_max));
  }
  for (std::size_t k = 0; k < n; ++k) {
    s.service_size.push_back(uniform(rng, cfg.size_min, cfg.size_max));
  }

  Mobility mobility(cfg, rng);
  std::vector<Walker> walkers;
  for (std::size_t k = 0; k < n; ++k) walkers.push_back(mobility.spawn());

  for (std::size_t t = 0; t < cfg.num_slots; ++t) {
    if (t > 0) {
      for (auto& w : walkers) mobility.advance(w);
    }
    std::vector<Point2> positions;
    std::vector<std::vector<std::size_t>> cov;
    std::vector<double> demand;
    for (std::size_t k = 0; k < n; ++k) {
      positions.push_back(walkers[k].pos);
      cov.push_back(coverage_at(geo.stations, cfg.coverage_radius, walkers[k].pos));
      if (cov.back().empty()) {
        throw UncoverableArea(fmt::format("user {} uncovered in slot {}", k, t));
      }
      demand.push_back(uniform(rng, cfg.demand_min, cfg.demand_max));
    }
    geo.user_positions.push_back(std::move(positions));
    s.coverage.push_back(std::move(cov));
    s.demand.push_back(std::move(demand));
    s.link_latency.push_back(lat);
  }
  s.geometry = std::move(geo);
  return validate_scenario(std::move(s));
}

}  // namespace mecsim
