#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dynsbm/types.hpp"

namespace dynsbm {

enum class CommunityModel { Fixed, Changing };

struct GenConfig {
  int n = 0;
  int k = 2;
  int T = 1;
  std::vector<double> prior;  // length k; empty means uniform 1/k
  DynamicsParams dynamics;
  CommunityModel community_model = CommunityModel::Fixed;

  // Changing mode only. Each step's minority set is drawn uniformly
  // without replacement from the nodes that were never minority before
  // (explicit sets override the draw). Mask row t covers the change
  // between snapshots t and t+1, 1-based.
  double minority_fraction = 0.0;
  std::vector<std::vector<int>> minority_sets;  // 0-based nodes, size T-1
  int first_change_step = 1;

  std::uint64_t seed = 0;
};

struct GeneratedSequence {
  GraphSequence seq;
  std::vector<Membership> memberships;  // one per snapshot
  MajorityMask mask;                    // (T-1) x n

  const Membership& truth() const { return memberships.front(); }
};

// Draws g from the prior and A^1 ~ SBM(W^1, g).
std::pair<Membership, BinaryMatrix> gen_initial(const GenConfig& cfg);

// One type-I step: new edge w.p. mu*W for absent pairs, edge kept w.p.
// 1-mu for present pairs. Throws when mu*(1+W) > 1 somewhere.
BinaryMatrix step_type1(const BinaryMatrix& prev, const Membership& g,
                        const BlockMatrix& W, const BlockMatrix& mu,
                        std::uint64_t seed, int t);

// One type-II step: pair keeps its previous value w.p. xi, else is redrawn
// Bernoulli(Wt).
BinaryMatrix step_type2(const BinaryMatrix& prev, const Membership& g,
                        const BlockMatrix& Wt, double xi, std::uint64_t seed,
                        int t);

GeneratedSequence gen_sequence(const GenConfig& cfg);

// Assumption-A noise: each node at each time keeps its true label w.p.
// 1-eps, else switches to one of the k-1 other labels uniformly,
// independently across (i, t).
std::vector<Membership> gen_noisy_memberships(const Membership& g_star,
                                              double eps, int T,
                                              std::uint64_t seed);

}  // namespace dynsbm
