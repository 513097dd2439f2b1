#include "dynsbm/unify.hpp"

#include <algorithm>
#include <stdexcept>

#include "dynsbm/assignment.hpp"
#include "dynsbm/kernels.hpp"

namespace dynsbm {

namespace {

void check_estimates(const std::vector<Membership>& estimates,
                     bool same_k_required) {
  if (estimates.empty()) throw std::invalid_argument("unify: no estimates");
  const int n = estimates[0].n();
  for (const Membership& g : estimates) {
    if (g.n() != n) throw std::invalid_argument("unify: inconsistent n");
    if (same_k_required && g.k != estimates[0].k) {
      throw std::invalid_argument("unify: inconsistent k");
    }
  }
}

int max_k(const std::vector<Membership>& estimates) {
  int k = 1;
  for (const Membership& g : estimates) k = std::max(k, g.k);
  return k;
}

std::vector<std::int32_t> comembership_counts(
    const std::vector<Membership>& estimates) {
  const int n = estimates[0].n();
  std::vector<std::int32_t> counts(static_cast<std::size_t>(n) * n, 0);
  for (const Membership& g : estimates) {
    kernels::accumulate_comembership(g, counts);
  }
  return counts;
}

}  // namespace

PermutationMatrix align_permutation(const Membership& q,
                                    const Membership& qref) {
  if (q.n() != qref.n()) {
    throw std::invalid_argument("align: size mismatch");
  }
  if (q.k != qref.k) throw std::invalid_argument("align: k mismatch");
  const int k = q.k;
  Eigen::MatrixXd confusion = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < q.n(); ++i) {
    confusion(q.labels[i] - 1, qref.labels[i] - 1) += 1.0;
  }
  PermutationMatrix tau;
  tau.map = max_weight_assignment(confusion);
  return tau;
}

Membership unify_cm(const std::vector<Membership>& estimates, double eps,
                    const RecoverOpts& opts) {
  check_estimates(estimates, false);
  if (eps < 0.0 || eps >= 1.0) {
    throw std::invalid_argument("unify_cm: eps must be in [0,1)");
  }
  const int n = estimates[0].n();
  const int k = max_k(estimates);
  const std::vector<std::int32_t> counts = comembership_counts(estimates);

  // The positive rescaling does not move the spectral k-means output; it
  // is kept for fidelity with the averaged-matrix definition.
  const double scale =
      1.0 / ((1.0 - eps) * (1.0 - eps) * static_cast<double>(estimates.size()));
  Eigen::MatrixXd S(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      S(i, j) = counts[static_cast<std::size_t>(i) * n + j] * scale;
    }
  }
  return spectral_cluster_affinity(S, k, opts);
}

Membership unify_lp(const std::vector<Membership>& estimates) {
  check_estimates(estimates, true);
  const int n = estimates[0].n();
  const int k = estimates[0].k;
  const int T = static_cast<int>(estimates.size());

  // Votes per (node, unified label); tau^1 is the identity.
  std::vector<int> votes(static_cast<std::size_t>(n) * k, 0);
  for (int i = 0; i < n; ++i) {
    votes[static_cast<std::size_t>(i) * k + estimates[0].labels[i] - 1]++;
  }
  for (int t = 1; t < T; ++t) {
    const PermutationMatrix tau = align_permutation(estimates[t], estimates[0]);
    for (int i = 0; i < n; ++i) {
      votes[static_cast<std::size_t>(i) * k +
            tau.map[estimates[t].labels[i] - 1]]++;
    }
  }

  Membership out;
  out.k = k;
  out.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    const int* row = votes.data() + static_cast<std::size_t>(i) * k;
    int best = 0;
    for (int c = 1; c < k; ++c) {
      if (row[c] > row[best]) best = c;  // ties keep the smaller label
    }
    out.labels[i] = best + 1;
  }
  return out;
}

Membership unify_threshold(const std::vector<Membership>& estimates, int C,
                           const RecoverOpts& opts) {
  check_estimates(estimates, false);
  const int T = static_cast<int>(estimates.size());
  if (C <= 0 || C >= T) {
    throw std::invalid_argument("unify_threshold: need 0 < C < T");
  }
  const int n = estimates[0].n();
  const int k = max_k(estimates);
  const std::vector<std::int32_t> counts = comembership_counts(estimates);

  BinaryMatrix au(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      au(i, j) = counts[static_cast<std::size_t>(i) * n + j] >= C ? 1 : 0;
    }
  }

  // Connected components of A^u (off-diagonal edges).
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  std::vector<int> stack;
  for (int start = 0; start < n; ++start) {
    if (comp[start] != -1) continue;
    comp[start] = ncomp;
    stack.push_back(start);
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        if (j != i && au(i, j) && comp[j] == -1) {
          comp[j] = ncomp;
          stack.push_back(j);
        }
      }
    }
    ++ncomp;
  }

  if (ncomp == k) {
    Membership out;
    out.k = k;
    out.labels.resize(n);
    for (int i = 0; i < n; ++i) out.labels[i] = comp[i] + 1;
    return out;
  }

  // Fallback when thresholding fragments or merges blocks.
  Eigen::MatrixXd S(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) S(i, j) = au(i, j);
  }
  return spectral_cluster_affinity(S, k, opts);
}

}  // namespace dynsbm
