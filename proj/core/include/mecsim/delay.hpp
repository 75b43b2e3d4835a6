#pragma once

#include <cstddef>

#include "mecsim/types.hpp"

// Slot-aggregate delay formulas. Every function accepts fractional matrices;
// the SlotDecision overloads are direct per-user loops over the integral case.
// Sums run users outer, resources inner, so results are bit-reproducible.

namespace mecsim {

/// sum_k sum_i s_k * max(x_now(i,k) - x_prev(i,k), 0).
double switching_delay(const Scenario& s, const Matrix& x_now, const Matrix& x_prev);
double switching_delay(const Scenario& s, const SlotDecision& now, const SlotDecision& prev);

/// sum_k sum_j y(j,k) / (C_j - L_j) with L_j = sum_k c_k(t) y(j,k). Returns
/// +inf when any base station carrying selection mass has L_j >= C_j.
double queuing_delay(const Scenario& s, std::size_t t, const Matrix& y);
double queuing_delay(const Scenario& s, std::size_t t, const SlotDecision& d);

/// sum_k sum_i sum_{j in coverage} y(j,k) x(i,k) l_ij(t).
double communication_delay(const Scenario& s, std::size_t t, const Matrix& x, const Matrix& y);
double communication_delay(const Scenario& s, std::size_t t, const SlotDecision& d);

double non_switching_delay(const Scenario& s, std::size_t t, const Matrix& x, const Matrix& y);
double non_switching_delay(const Scenario& s, std::size_t t, const SlotDecision& d);

DelayBreakdown total_delay(const Scenario& s, std::size_t t, const Matrix& x_now,
                           const Matrix& x_prev, const Matrix& y);
/// Integral variant; without a previous decision the switching delay is 0.
DelayBreakdown total_delay(const Scenario& s, std::size_t t, const SlotDecision& now,
                           const SlotDecision* prev);

}  // namespace mecsim
