#pragma once

#include <vector>

#include "dynsbm/recover.hpp"
#include "dynsbm/types.hpp"

namespace dynsbm {

// Two-parameter assortative family: W = alpha k wbar I + (1-alpha) wbar 11'.
struct AssortativeParams {
  double alpha = 0.0;
  double wbar = 0.0;
  int k = 2;
};

BlockMatrix assortative_block_matrix(const AssortativeParams& p);

// Least-squares inversion: wbar is the mean entry, alpha the scaled
// diagonal excess, clipped to [0,1]. alpha is reported as 0 when wbar = 0.
AssortativeParams fit_assortative(const BlockMatrix& W);

struct RemovalResult {
  GraphSequence seq;
  std::vector<int> kept;  // surviving original node indices, ascending
};

// Drops every node whose mask entry is 0 at any step and keeps the
// induced subgraph sequence. Throws when nothing survives.
RemovalResult remove_minorities(const GraphSequence& seq,
                                const MajorityMask& M);

// Marginal edge probability of Eq-style four-case mixture: majority /
// minority status of both endpoints at t-1, averaging changed labels over
// the k-1 alternatives. a, b are 1-based current labels.
double marginal_changing(const BlockMatrix& Wprev, const BlockMatrix& Wcur,
                         double xi, int Mi, int Mj, int a, int b, int k);

// Same marginal in the assortative special case, via the gamma/psi form.
double marginal_assortative(const AssortativeParams& p, double xi, int Mi,
                            int Mj, int a, int b);

enum class AlignRule { Highest, Lowest, Undecidable };

// Sign test deciding whether a minority community should be matched to
// the majority community it shares the most links with (Highest) or the
// fewest (Lowest). Mixed signs across (a, b) pairs are surfaced as
// Undecidable rather than guessed.
AlignRule alignment_condition(const BlockMatrix& Wprev,
                              const BlockMatrix& Wcur, double xi, int k);

enum class UnifyMethod { CM, LP, Threshold };

struct MinorityRecoveryOpts {
  RecoverOpts recover;
  UnifyMethod unify = UnifyMethod::LP;
  double grid_step = 0.01;
};

struct MinorityRecovery {
  Membership g_prev;  // unified estimate for snapshots 1..t-1
  Membership g_t;     // estimate at t including minority nodes
  double xi_hat = 0.0;
  BlockMatrix W_hat;
  AssortativeParams assort;
  AlignRule rule = AlignRule::Highest;
  bool low_confidence = false;  // minority set smaller than k
  std::vector<int> minority_nodes;
};

// Block-substructure recovery at the last snapshot of seq: fixed-community
// pipeline on snapshots 1..t-1, separate spectral recovery of the majority
// and minority subgraphs of A^t, then cross-link-density matching between
// the two sets of communities. All nodes must be majority before t-1;
// the relevant mask row is the last one.
MinorityRecovery recover_with_minorities(const GraphSequence& seq,
                                         const MajorityMask& M, int k,
                                         const MinorityRecoveryOpts& opts);

}  // namespace dynsbm
