#include "dynsbm/changing.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "dynsbm/assignment.hpp"
#include "dynsbm/estimate.hpp"
#include "dynsbm/unify.hpp"

namespace dynsbm {

BlockMatrix assortative_block_matrix(const AssortativeParams& p) {
  BlockMatrix w = BlockMatrix::Constant(p.k, p.k, (1.0 - p.alpha) * p.wbar);
  for (int r = 0; r < p.k; ++r) {
    w(r, r) += p.alpha * p.k * p.wbar;
  }
  for (int r = 0; r < p.k; ++r) {
    for (int s = 0; s < p.k; ++s) {
      if (w(r, s) < -1e-12 || w(r, s) > 1.0 + 1e-12) {
        throw std::invalid_argument(
            "assortative params give entries outside [0,1]");
      }
    }
  }
  return w;
}

AssortativeParams fit_assortative(const BlockMatrix& W) {
  const int k = static_cast<int>(W.rows());
  if (k < 2 || W.cols() != k) {
    throw std::invalid_argument("fit_assortative: needs a k>=2 square matrix");
  }
  AssortativeParams p;
  p.k = k;
  p.wbar = W.sum() / (k * k);
  if (p.wbar == 0.0) {
    std::cerr << "fit_assortative: wbar = 0, alpha undefined (returning 0)\n";
    p.alpha = 0.0;
    return p;
  }
  const double diag_mean = W.trace() / k;
  const double off_mean = (W.sum() - W.trace()) / (k * (k - 1));
  p.alpha = std::clamp((diag_mean - off_mean) / (k * p.wbar), 0.0, 1.0);
  return p;
}

RemovalResult remove_minorities(const GraphSequence& seq,
                                const MajorityMask& M) {
  if (M.n != seq.n || M.rows() != seq.T() - 1) {
    throw std::invalid_argument("remove_minorities: mask shape mismatch");
  }
  RemovalResult out;
  for (int i = 0; i < seq.n; ++i) {
    bool keep = true;
    for (int t = 0; t < M.rows(); ++t) {
      if (M(t, i) == 0) {
        keep = false;
        break;
      }
    }
    if (keep) out.kept.push_back(i);
  }
  if (out.kept.empty()) {
    throw std::invalid_argument("remove_minorities: all nodes removed");
  }
  const int m = static_cast<int>(out.kept.size());
  out.seq.n = m;
  for (const BinaryMatrix& a : seq.adj) {
    BinaryMatrix b(m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        b(i, j) = a(out.kept[i], out.kept[j]);
      }
    }
    out.seq.adj.push_back(std::move(b));
  }
  return out;
}

double marginal_changing(const BlockMatrix& Wprev, const BlockMatrix& Wcur,
                         double xi, int Mi, int Mj, int a, int b, int k) {
  const int ai = a - 1, bi = b - 1;
  double persist = 0.0;
  if (Mi && Mj) {
    persist = Wprev(ai, bi);
  } else if (Mi && !Mj) {
    double sum = 0.0;
    for (int gj = 0; gj < k; ++gj) {
      if (gj != bi) sum += Wprev(ai, gj);
    }
    persist = sum / (k - 1);
  } else if (!Mi && Mj) {
    double sum = 0.0;
    for (int gi = 0; gi < k; ++gi) {
      if (gi != ai) sum += Wprev(gi, bi);
    }
    persist = sum / (k - 1);
  } else {
    double sum = 0.0;
    for (int gi = 0; gi < k; ++gi) {
      for (int gj = 0; gj < k; ++gj) {
        if (gi != ai && gj != bi) sum += Wprev(gi, gj);
      }
    }
    persist = sum / double((k - 1) * (k - 1));
  }
  return xi * persist + (1.0 - xi) * Wcur(ai, bi);
}

double marginal_assortative(const AssortativeParams& p, double xi, int Mi,
                            int Mj, int a, int b) {
  const BlockMatrix w = assortative_block_matrix(p);
  const double wab = w(a - 1, b - 1);
  const double km1 = p.k - 1;
  double gamma = 0.0, psi = 0.0;
  if (Mi && Mj) {
    psi = 1.0;
  } else if (Mi != Mj) {
    gamma = p.k * p.wbar / km1;
    psi = -1.0 / km1;
  } else {
    gamma = (p.k * p.k - 2.0 * p.k) * p.wbar / (km1 * km1);
    psi = 1.0 / (km1 * km1);
  }
  return xi * (gamma + psi * wab) + (1.0 - xi) * wab;
}

AlignRule alignment_condition(const BlockMatrix& Wprev,
                              const BlockMatrix& Wcur, double xi, int k) {
  bool any_pos = false, any_neg = false;
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      if (a == b) continue;
      const double d = (1.0 - xi) * (Wcur(a, a) - Wcur(a, b)) +
                       xi / (k - 1) * (Wprev(a, b) - Wprev(a, a));
      if (d > 0.0) any_pos = true;
      if (d < 0.0) any_neg = true;
    }
  }
  if (any_pos && !any_neg) return AlignRule::Highest;
  if (any_neg && !any_pos) return AlignRule::Lowest;
  return AlignRule::Undecidable;
}

namespace {

Membership induced_recover(const BinaryMatrix& A, const std::vector<int>& nodes,
                           int k, const RecoverOpts& opts) {
  const int m = static_cast<int>(nodes.size());
  BinaryMatrix sub(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      sub(i, j) = A(nodes[i], nodes[j]);
    }
  }
  return cm_recover(sub, k, opts);
}

Membership run_unify(const std::vector<Membership>& estimates,
                     UnifyMethod method, const RecoverOpts& opts) {
  switch (method) {
    case UnifyMethod::CM:
      return unify_cm(estimates, 0.0, opts);
    case UnifyMethod::Threshold:
      return estimates.size() >= 2
                 ? unify_threshold(estimates,
                                   std::max<int>(1, estimates.size() / 2), opts)
                 : estimates[0];
    case UnifyMethod::LP:
    default:
      return unify_lp(estimates);
  }
}

}  // namespace

MinorityRecovery recover_with_minorities(const GraphSequence& seq,
                                         const MajorityMask& M, int k,
                                         const MinorityRecoveryOpts& opts) {
  const int t = seq.T();
  if (t < 2) {
    throw std::invalid_argument("recover_with_minorities: needs T >= 2");
  }
  if (M.n != seq.n || M.rows() < t - 1) {
    throw std::invalid_argument("recover_with_minorities: mask too short");
  }

  MinorityRecovery out;

  // Fixed-community pipeline over snapshots 1..t-1. The staged protocol
  // guarantees those snapshots share one membership vector.
  std::vector<Membership> estimates(t - 1);
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < t - 1; ++s) {
    RecoverOpts ro = opts.recover;
    ro.seed = opts.recover.seed + static_cast<std::uint64_t>(s) + 1;
    estimates[s] = cm_recover(seq.adj[s], k, ro);
  }
  out.g_prev = t - 1 == 1 ? estimates[0]
                          : run_unify(estimates, opts.unify, opts.recover);

  if (t - 1 >= 2) {
    GraphSequence prefix;
    prefix.n = seq.n;
    prefix.adj.assign(seq.adj.begin(), seq.adj.end() - 1);
    const FitType2Result fit = fit_type2(prefix, out.g_prev, opts.grid_step);
    out.xi_hat = fit.xi;
    out.W_hat = fit.W;
  } else {
    // Too little history for a xi estimate; 0 selects the Highest branch.
    out.xi_hat = 0.0;
    out.W_hat = marginal_estimate(seq.adj[0], out.g_prev);
  }
  out.assort = fit_assortative(out.W_hat);

  std::vector<int> majority, minority;
  for (int i = 0; i < seq.n; ++i) {
    (M(t - 2, i) ? majority : minority).push_back(i);
  }
  out.minority_nodes = minority;

  out.g_t = out.g_prev;  // majority nodes keep their community
  if (minority.empty()) return out;
  if (majority.empty()) {
    throw std::invalid_argument("recover_with_minorities: no majority nodes");
  }

  const int k_min = std::min<int>(k, static_cast<int>(minority.size()));
  out.low_confidence = k_min < k;

  const BinaryMatrix& at = seq.adj.back();
  RecoverOpts ro_maj = opts.recover;
  ro_maj.seed = opts.recover.seed + 1000003;
  RecoverOpts ro_min = opts.recover;
  ro_min.seed = opts.recover.seed + 2000003;
  Membership g_maj_t = induced_recover(at, majority, k, ro_maj);
  const Membership g_min_t = induced_recover(at, minority, k_min, ro_min);

  // Relabel the time-t majority estimate into the unified label space
  // (majority memberships persist, so agreement matching is valid).
  {
    Membership ref;
    ref.k = k;
    for (int idx : majority) ref.labels.push_back(out.g_prev.labels[idx]);
    const PermutationMatrix tau = align_permutation(g_maj_t, ref);
    for (int& l : g_maj_t.labels) l = tau.map[l - 1] + 1;
  }

  // Cross-link densities between minority and majority communities at t.
  Eigen::MatrixXd density = Eigen::MatrixXd::Zero(k, k);
  {
    Eigen::MatrixXd links = Eigen::MatrixXd::Zero(k, k);
    std::vector<std::int64_t> min_size(k, 0), maj_size(k, 0);
    for (std::size_t i = 0; i < minority.size(); ++i) {
      min_size[g_min_t.labels[i] - 1]++;
    }
    for (std::size_t j = 0; j < majority.size(); ++j) {
      maj_size[g_maj_t.labels[j] - 1]++;
    }
    for (std::size_t i = 0; i < minority.size(); ++i) {
      for (std::size_t j = 0; j < majority.size(); ++j) {
        if (at(minority[i], majority[j])) {
          links(g_min_t.labels[i] - 1, g_maj_t.labels[j] - 1) += 1.0;
        }
      }
    }
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) {
        const std::int64_t denom = min_size[r] * maj_size[c];
        density(r, c) = denom > 0 ? links(r, c) / denom : 0.0;
      }
    }
  }

  // Matching (rather than per-row argmax) prevents two minority
  // communities landing on one majority community.
  const bool highest = 1.0 - out.xi_hat - out.xi_hat / (k - 1) > 0.0;
  out.rule = highest ? AlignRule::Highest : AlignRule::Lowest;
  const std::vector<int> match = highest ? max_weight_assignment(density)
                                         : min_cost_assignment(density);

  for (std::size_t i = 0; i < minority.size(); ++i) {
    out.g_t.labels[minority[i]] = match[g_min_t.labels[i] - 1] + 1;
  }
  return out;
}

}  // namespace dynsbm
