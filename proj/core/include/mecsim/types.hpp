#pragma once

#include <compare>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace mecsim {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Dense row-major matrix. Decision matrices are (resource x user): rows are
/// clouds or base stations, columns are users.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> values() const { return data_; }
  std::span<double> values() { return data_; }

  double column_sum(std::size_t c) const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point2&) const = default;
};

/// Positions behind a generated scenario, kept so coverage can be recomputed.
struct Geometry {
  std::vector<Point2> stations;
  double coverage_radius = 0.0;
  std::vector<std::vector<Point2>> user_positions;  // [t][k]
  bool operator==(const Geometry&) const = default;
};

/// Immutable description of one simulation run. Cloud i bundles base station
/// i, so both share the index space 0..num_clouds-1.
struct Scenario {
  std::size_t num_clouds = 0;
  std::size_t num_users = 0;
  std::size_t num_slots = 0;

  std::vector<double> bs_capacity;     // C_j, work units per slot
  std::vector<double> cloud_capacity;  // S_i, service-size units
  std::vector<double> service_size;    // s_k

  /// link_latency[t](j, i): delay between base station j and cloud i.
  std::vector<Matrix> link_latency;
  /// coverage[t][k]: sorted base stations reachable by user k in slot t.
  std::vector<std::vector<std::vector<std::size_t>>> coverage;
  /// demand[t][k]: c_k(t), work units per slot.
  std::vector<std::vector<double>> demand;

  std::optional<Geometry> geometry;

  double latency(std::size_t t, std::size_t bs, std::size_t cloud) const {
    return link_latency[t](bs, cloud);
  }
  bool covers(std::size_t t, std::size_t user, std::size_t bs) const;

  bool operator==(const Scenario&) const = default;
};

/// Integral per-slot decision: one hosting cloud and one access base station
/// per user.
struct SlotDecision {
  std::vector<std::size_t> placement;
  std::vector<std::size_t> selection;

  auto operator<=>(const SlotDecision&) const = default;
  bool operator==(const SlotDecision&) const = default;
};

/// Relaxed decision with column-stochastic x (M x N) and y (M x N).
struct FractionalDecision {
  Matrix x;
  Matrix y;
  bool operator==(const FractionalDecision&) const = default;
};

struct DelayBreakdown {
  double switching = 0.0;
  double queuing = 0.0;
  double communication = 0.0;
  double non_switching = 0.0;
  double total = 0.0;

  static DelayBreakdown compose(double switching, double queuing, double communication) {
    DelayBreakdown d;
    d.switching = switching;
    d.queuing = queuing;
    d.communication = communication;
    d.non_switching = queuing + communication;
    d.total = d.non_switching + switching;
    return d;
  }
  bool operator==(const DelayBreakdown&) const = default;
};

struct ControllerState {
  SlotDecision prev_decision;
  std::size_t last_migration_slot = 0;
  double accumulated_t2 = 0.0;  // non-switching delay since the last migration
  double beta = 1.0;            // tolerance factor, may be +inf
};

Matrix placement_matrix(const SlotDecision& d, std::size_t num_clouds);
Matrix selection_matrix(const SlotDecision& d, std::size_t num_clouds);
FractionalDecision to_fractional(const SlotDecision& d, std::size_t num_clouds);

}  // namespace mecsim
