#include "dynsbm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dynsbm/assignment.hpp"

namespace dynsbm {

namespace {

double nmi_from_labels(const std::vector<int>& a, const std::vector<int>& b) {
  const int n = static_cast<int>(a.size());
  const int ka = *std::max_element(a.begin(), a.end());
  const int kb = *std::max_element(b.begin(), b.end());
  std::vector<std::int64_t> joint(static_cast<std::size_t>(ka) * kb, 0);
  std::vector<std::int64_t> ca(ka, 0), cb(kb, 0);
  for (int i = 0; i < n; ++i) {
    joint[static_cast<std::size_t>(a[i] - 1) * kb + (b[i] - 1)]++;
    ca[a[i] - 1]++;
    cb[b[i] - 1]++;
  }
  const double dn = n;
  double ha = 0.0, hb = 0.0, mi = 0.0;
  for (std::int64_t c : ca) {
    if (c > 0) ha -= (c / dn) * std::log(c / dn);
  }
  for (std::int64_t c : cb) {
    if (c > 0) hb -= (c / dn) * std::log(c / dn);
  }
  for (int r = 0; r < ka; ++r) {
    for (int s = 0; s < kb; ++s) {
      const std::int64_t c = joint[static_cast<std::size_t>(r) * kb + s];
      if (c > 0) {
        mi += (c / dn) * std::log((c * dn) / (double(ca[r]) * double(cb[s])));
      }
    }
  }
  const double denom = 0.5 * (ha + hb);
  if (denom <= 0.0) return 1.0;  // both partitions are single clusters
  return std::clamp(mi / denom, 0.0, 1.0);
}

}  // namespace

double nmi(const Membership& g1, const Membership& g2) {
  if (g1.n() != g2.n()) throw std::invalid_argument("nmi: size mismatch");
  if (g1.n() == 0) throw std::invalid_argument("nmi: empty membership");
  return nmi_from_labels(g1.labels, g2.labels);
}

double nmi_subset(const Membership& g1, const Membership& g2,
                  const std::vector<int>& nodes) {
  std::vector<int> a, b;
  a.reserve(nodes.size());
  b.reserve(nodes.size());
  for (int i : nodes) {
    a.push_back(g1.labels[i]);
    b.push_back(g2.labels[i]);
  }
  if (a.empty()) throw std::invalid_argument("nmi_subset: empty subset");
  return nmi_from_labels(a, b);
}

double misclassification(const Membership& g_hat, const Membership& g_star) {
  const int n = g_hat.n();
  if (n != g_star.n()) {
    throw std::invalid_argument("misclassification: size mismatch");
  }
  const int k = std::max(g_hat.k, g_star.k);
  Eigen::MatrixXd agree = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < n; ++i) {
    agree(g_hat.labels[i] - 1, g_star.labels[i] - 1) += 1.0;
  }
  const std::vector<int> perm = max_weight_assignment(agree);
  double matched = 0.0;
  for (int r = 0; r < k; ++r) matched += agree(r, perm[r]);
  return 1.0 - matched / n;
}

double frob_error(const BlockMatrix& W_hat, const BlockMatrix& W_true) {
  const int k = static_cast<int>(W_true.rows());
  if (W_hat.rows() != k || W_hat.cols() != k || W_true.cols() != k) {
    throw std::invalid_argument("frob_error: size mismatch");
  }
  const double denom = W_true.norm();
  if (denom == 0.0) throw std::invalid_argument("frob_error: zero W_true");

  // k is small; enumerate all permutations.
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double ss = 0.0;
    for (int r = 0; r < k; ++r) {
      for (int s = 0; s < k; ++s) {
        const double d = W_hat(perm[r], perm[s]) - W_true(r, s);
        ss += d * d;
      }
    }
    best = std::min(best, ss);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::sqrt(best) / denom;
}

double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  const std::size_t n = scores.size();
  if (labels.size() != n) throw std::invalid_argument("auc: size mismatch");
  std::size_t pos = 0;
  for (int l : labels) {
    if (l != 0 && l != 1) throw std::invalid_argument("auc: labels must be 0/1");
    pos += l;
  }
  const std::size_t neg = n - pos;
  if (pos == 0 || neg == 0) {
    throw std::invalid_argument("auc: needs both classes");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });

  // Midranks over tie groups; sum ranks of positives.
  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * (double(i + 1) + double(j + 1));
    for (std::size_t q = i; q <= j; ++q) {
      if (labels[order[q]]) rank_sum_pos += midrank;
    }
    i = j + 1;
  }
  const double u_stat = rank_sum_pos - 0.5 * double(pos) * double(pos + 1);
  return u_stat / (double(pos) * double(neg));
}

}  // namespace dynsbm
