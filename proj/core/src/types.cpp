#include "mecsim/types.hpp"

#include <algorithm>

namespace mecsim {

double Matrix::column_sum(std::size_t c) const {
  double sum = 0.0;
  for (std::size_t r = 0; r < rows_; ++r) sum += (*this)(r, c);
  return sum;
}

bool Scenario::covers(std::size_t t, std::size_t user, std::size_t bs) const {
  const auto& set = coverage[t][user];
  return std::binary_search(set.begin(), set.end(), bs);
}

Matrix placement_matrix(const SlotDecision& d, std::size_t num_clouds) {
  Matrix x(num_clouds, d.placement.size());
  for (std::size_t k = 0; k < d.placement.size(); ++k) x(d.placement[k], k) = 1.0;
  return x;
}

Matrix selection_matrix(const SlotDecision& d, std::size_t num_clouds) {
  Matrix y(num_clouds, d.selection.size());
  for (std::size_t k = 0; k < d.selection.size(); ++k) y(d.selection[k], k) = 1.0;
  return y;
}

FractionalDecision to_fractional(const SlotDecision& d, std::size_t num_clouds) {
  return {placement_matrix(d, num_clouds), selection_matrix(d, num_clouds)};
}

}  // namespace mecsim
