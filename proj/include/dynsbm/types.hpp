#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "dynsbm/matrix.hpp"

namespace dynsbm {

// k x k symmetric matrix of probabilities in [0,1].
using BlockMatrix = Eigen::MatrixXd;

// Ordered sequence of T symmetric zero-diagonal 0/1 adjacency matrices
// over a fixed node set.
struct GraphSequence {
  int n = 0;
  std::vector<BinaryMatrix> adj;

  int T() const { return static_cast<int>(adj.size()); }
};

// Community labels, 1-based: labels[i] in {1..k}.
struct Membership {
  std::vector<int> labels;
  int k = 0;

  int n() const { return static_cast<int>(labels.size()); }
};

// (T-1) x n matrix of majority indicators: row t is 1 for nodes whose
// community is unchanged between snapshots t+1 and t+2 (1-based times).
struct MajorityMask {
  int n = 0;
  std::vector<std::uint8_t> m;  // row-major, rows() x n

  int rows() const { return n == 0 ? 0 : static_cast<int>(m.size()) / n; }
  std::uint8_t operator()(int t, int i) const {
    return m[static_cast<std::size_t>(t) * n + i];
  }
  std::uint8_t& operator()(int t, int i) {
    return m[static_cast<std::size_t>(t) * n + i];
  }
  static MajorityMask all_majority(int steps, int n) {
    MajorityMask mask;
    mask.n = n;
    mask.m.assign(static_cast<std::size_t>(steps) * n, 1);
    return mask;
  }
};

enum class Model { TypeI, TypeII, General };

// Parameters of the link dynamic. W holds one matrix per time step when
// the edge probability matrix varies; a single entry means time-invariant.
struct DynamicsParams {
  Model model = Model::TypeII;
  std::vector<BlockMatrix> W;   // W^1 (and W^2..W^T when time-varying)
  BlockMatrix mu;               // TypeI: per-block deletion rate
  double xi = 0.0;              // TypeII: copy probability
  BlockMatrix f, h;             // General: p(0->1) and p(1->1) per block

  const BlockMatrix& W_at(int t) const {  // t is 1-based
    return W.size() == 1 ? W[0] : W.at(static_cast<std::size_t>(t) - 1);
  }
};

// Throws std::invalid_argument when a DynamicsParams violates its model's
// probability constraints (e.g. type-I requires mu*(1+W) <= 1 entrywise).
void validate_dynamics(const DynamicsParams& p);

bool is_valid_membership(const Membership& g);

// Y_ij = 1 iff g_i = g_j.
BinaryMatrix cluster_matrix(const Membership& g);

// Inverse of cluster_matrix. Labels are assigned 1,2,... in order of each
// block's smallest node index. Throws std::invalid_argument when Y is not
// a valid cluster matrix (asymmetric, zero diagonal, or non-transitive).
Membership membership_from_cluster_matrix(const BinaryMatrix& Y, int k);

struct SequenceDiagnostics {
  bool ok = true;
  std::vector<std::string> issues;
};

// Reports every symmetry / diagonal / shape violation with indices
// instead of raising.
SequenceDiagnostics validate_sequence(const GraphSequence& seq);

}  // namespace dynsbm
