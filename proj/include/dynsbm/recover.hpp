#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "dynsbm/types.hpp"

namespace dynsbm {

struct RecoverOpts {
  std::uint64_t seed = 0;
  int restarts = 10;
  int max_iters = 100;
  double tol = 1e-6;  // absolute inertia change
};

// Single-snapshot community recovery: k eigenvectors of the symmetric
// normalized Laplacian with smallest eigenvalues, row-normalized, then
// k-means (k-means++ seeding, best of `restarts` by inertia). Zero-degree
// rows get zero embedding weight and are assigned post hoc to the largest
// recovered community. Labels are canonicalized by first occurrence.
Membership cm_recover(const BinaryMatrix& A, int k, const RecoverOpts& opts);

// Same procedure on the time-averaged adjacency matrix.
Membership spectral_mean(const GraphSequence& seq, int k,
                         const RecoverOpts& opts);

// Shared core over an arbitrary nonnegative affinity matrix.
Membership spectral_cluster_affinity(const Eigen::MatrixXd& S, int k,
                                     const RecoverOpts& opts);

// Deterministic Lloyd iterations with k-means++ seeding; rows of X are
// points. Returns 0-based labels.
std::vector<int> kmeans_rows(const Eigen::MatrixXd& X, int k,
                             const RecoverOpts& opts);

}  // namespace dynsbm
