#pragma once

#include <Eigen/Core>
#include <vector>

namespace dynsbm {

// Exact square linear assignment (Hungarian algorithm with potentials,
// O(n^3)). Returns col[i] = column assigned to row i.
std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost);

inline std::vector<int> max_weight_assignment(const Eigen::MatrixXd& weight) {
  return min_cost_assignment(-weight);
}

}  // namespace dynsbm
