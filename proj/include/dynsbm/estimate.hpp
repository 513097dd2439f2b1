#pragma once

#include <vector>

#include "dynsbm/types.hpp"

namespace dynsbm {

// Per-snapshot block density estimate. Off-diagonal entries use the
// |r||s| denominator; diagonal entries sum over ordered pairs and divide
// by |r|(|r|-1). Diagonal entries for singleton blocks come back NaN.
// Throws when a community in {1..g.k} is empty.
BlockMatrix marginal_estimate(const BinaryMatrix& A, const Membership& g);

// Entrywise marginal recursion Wt^t = h Wt^{t-1} + f (1 - Wt^{t-1}),
// Wt^1 = W1, evaluated stepwise. t is 1-based.
BlockMatrix marginal_recursion_general(const BlockMatrix& f,
                                       const BlockMatrix& h,
                                       const BlockMatrix& W1, int t);

// Closed form for the type-I dynamic:
// Wt^t = ((1 - mu - mu W)^{t-1} W^2 + W) / (1 + W).
BlockMatrix marginal_recursion_type1(const BlockMatrix& W,
                                     const BlockMatrix& mu, int t);

// The type-II marginal is W at every t.
BlockMatrix marginal_recursion_type2(const BlockMatrix& W, double xi, int t);

struct FitType1Result {
  BlockMatrix W;
  BlockMatrix mu;
};

// Per-time grid fits of (W, mu) against each snapshot's marginal estimate,
// averaged over t. Restricted to the feasible region mu (1 + W) <= 1.
FitType1Result fit_type1(const GraphSequence& seq, const Membership& g,
                         double grid_step = 0.01);

// Joint variant: one grid fit per block pair against all T marginal
// estimates at once (sum of squared residuals), with one local
// refinement pass at grid_step/10.
FitType1Result fit_type1_joint(const GraphSequence& seq, const Membership& g,
                               double grid_step = 0.01);

struct FitType2Result {
  BlockMatrix W;
  double xi = 0.0;
};

// W as the time average of per-snapshot marginal estimates; xi by grid
// maximization of the type-II log-likelihood with that W plugged in.
FitType2Result fit_type2(const GraphSequence& seq, const Membership& g,
                         double grid_step = 0.01);

// Log of the conditional sequence likelihood for the given dynamic.
// Structurally impossible observations under exact 0/1 parameters give
// -infinity; interior probabilities are clamped away from 0 and 1.
double loglik_general(const GraphSequence& seq, const Membership& g,
                      const DynamicsParams& params);

struct MleOpts {
  double coarse_step = 0.02;
  double fine_step = 0.002;
  bool time_varying_w = false;  // type-I only: one W per snapshot
};

// Maximum-likelihood fit by per-block-pair grid search with one local
// refinement pass (the likelihood factorizes over block pairs; the
// type-II xi is shared and fitted after W).
DynamicsParams fit_mle_general(const GraphSequence& seq, const Membership& g,
                               Model model, const MleOpts& opts = {});

}  // namespace dynsbm
