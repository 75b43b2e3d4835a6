#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mecsim/lp.hpp"
#include "mecsim/relaxed_optimizer.hpp"
#include "mecsim/types.hpp"

// Convex relaxation of one slot over joint variables w(i,j,k): the mass of
// user k routed through base station j to a service on cloud i. The
// marginals sum_j w and sum_i w are the placement x and selection y. The
// communication delay becomes linear in w, and the queuing delay is replaced
// by sum_j sum_k y(j,k)^2 / (C_j - L_j), which is convex and equals the
// queuing delay at every 0/1 point. Its minimum is therefore a lower bound on
// the best integral non-switching delay.

namespace mecsim {

class JointPolytope {
 public:
  static JointPolytope for_slot(const Scenario& s, std::size_t t, double margin = kDefaultMargin);

  std::size_t num_clouds() const { return num_clouds_; }
  std::size_t num_users() const { return num_users_; }
  std::size_t num_vars() const { return program_.num_vars; }
  const lp::LinearProgram& program() const { return program_; }

  /// Index of w(cloud, coverage[user][slot_pos], user).
  std::size_t index(std::size_t cloud, std::size_t cov_pos, std::size_t user) const {
    return offset_[user] + cov_pos * num_clouds_ + cloud;
  }
  const std::vector<std::size_t>& coverage(std::size_t user) const { return coverage_[user]; }

  FractionalDecision marginals(const std::vector<double>& w) const;
  /// Product coupling w(i,j,k) = x(i,k) y(j,k).
  std::vector<double> product(const FractionalDecision& d) const;

 private:
  std::size_t num_clouds_ = 0;
  std::size_t num_users_ = 0;
  std::vector<std::vector<std::size_t>> coverage_;
  std::vector<std::size_t> offset_;
  lp::LinearProgram program_;
};

/// Value of the convex relaxation objective at w; +inf past capacity.
double joint_objective(const Scenario& s, std::size_t t, const JointPolytope& p,
                       const std::vector<double>& w);

std::vector<double> joint_gradient(const Scenario& s, std::size_t t, const JointPolytope& p,
                                   const std::vector<double>& w);

struct RelaxationBound {
  FractionalDecision marginals;
  double objective = 0.0;  // relaxation value at the final iterate
  double gap = 0.0;        // conditional-gradient gap; objective - gap <= optimum
  std::size_t iterations = 0;
};

/// Conditional-gradient minimization of the convex relaxation. `start` must
/// lie in the slot polytope; its product coupling is the first iterate.
RelaxationBound solve_relaxation_bound(const Scenario& s, std::size_t t,
                                       const FractionalDecision& start,
                                       const SolverConfig& config = {});

}  // namespace mecsim
