#pragma once

#include <vector>

#include "dynsbm/recover.hpp"
#include "dynsbm/types.hpp"

namespace dynsbm {

// tau maps labels of one estimate onto a reference: map[r] = s means
// label r+1 becomes label s+1 (0-based storage, one entry per label).
struct PermutationMatrix {
  std::vector<int> map;
};

// Permutation maximizing trace(tau' Q' Qref), i.e. the relabeling of q
// that agrees with qref on the most nodes. Both must share n and k.
PermutationMatrix align_permutation(const Membership& q,
                                    const Membership& qref);

// Averaged-cluster-matrix unification: S = sum_t Y^t / ((1-eps)^2 T),
// then spectral k-means on S as an affinity matrix. eps defaults to 0
// when the per-node error rate is unknown.
Membership unify_cm(const std::vector<Membership>& estimates,
                    double eps = 0.0, const RecoverOpts& opts = {});

// Un-permutes every estimate against the first one by max-weight
// matching, then majority-votes per node (ties to the smallest label).
Membership unify_lp(const std::vector<Membership>& estimates);

// Count-threshold heuristic: build A^u with an edge where at least C of
// the T estimates agree on co-membership, then read communities off the
// connected components (spectral fallback when the component count is
// not k).
Membership unify_threshold(const std::vector<Membership>& estimates, int C,
                           const RecoverOpts& opts = {});

}  // namespace dynsbm
