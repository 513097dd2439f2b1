#pragma once

#include <Eigen/Core>

#include "dynsbm/types.hpp"

namespace dynsbm {

// One-step-ahead edge probabilities given the previous snapshot and a
// fitted dynamic: score_ij = P(A^t_ij = 1 | A^{t-1}_ij, g, params).
// Symmetric with zero diagonal.
Eigen::MatrixXd predict_links(const BinaryMatrix& A_prev, const Membership& g,
                              const DynamicsParams& params);

}  // namespace dynsbm
