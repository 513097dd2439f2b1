#include "dynsbm/recover.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dynsbm/rng.hpp"

namespace dynsbm {

namespace {

struct KmeansResult {
  std::vector<int> labels;
  double inertia = std::numeric_limits<double>::infinity();
};

KmeansResult kmeans_once(const Eigen::MatrixXd& X, int k,
                         const RecoverOpts& opts, SeqRng& rng) {
  const int n = static_cast<int>(X.rows());
  Eigen::MatrixXd centroids(k, X.cols());

  // k-means++ seeding.
  centroids.row(0) = X.row(static_cast<int>(rng.below(n)));
  Eigen::VectorXd d2 =
      (X.rowwise() - centroids.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    int pick = 0;
    if (total <= 0.0) {
      pick = static_cast<int>(rng.below(n));
    } else {
      const double u = rng.uniform() * total;
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        acc += d2[i];
        if (u < acc) {
          pick = i;
          break;
        }
        pick = i;
      }
    }
    centroids.row(c) = X.row(pick);
    d2 = d2.cwiseMin(
        (X.rowwise() - centroids.row(c)).rowwise().squaredNorm());
  }

  KmeansResult res;
  res.labels.assign(n, 0);
  double prev_inertia = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < opts.max_iters; ++iter) {
    // Assign: nearest centroid, ties to the lowest index.
    double inertia = 0.0;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (X.row(i) - centroids.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double d = (X.row(i) - centroids.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      res.labels[i] = best;
      inertia += best_d;
    }
    res.inertia = inertia;

    // Update.
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, X.cols());
    std::vector<int> counts(k, 0);
    for (int i = 0; i < n; ++i) {
      sums.row(res.labels[i]) += X.row(i);
      counts[res.labels[i]]++;
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        centroids.row(c) = sums.row(c) / counts[c];
      } else {
        // Reseed an empty cluster at the point farthest from its centroid.
        int far = 0;
        double far_d = -1.0;
        for (int i = 0; i < n; ++i) {
          const double d = (X.row(i) - centroids.row(res.labels[i])).squaredNorm();
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        centroids.row(c) = X.row(far);
      }
    }

    if (std::abs(prev_inertia - inertia) <= opts.tol) break;
    prev_inertia = inertia;
  }
  return res;
}

std::vector<int> reassign_isolated_to_largest(std::vector<int> labels, int k,
                                              const std::vector<char>& isolated) {
  std::vector<int> counts(k, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!isolated[i]) counts[labels[i]]++;
  }
  int largest = 0;
  for (int c = 1; c < k; ++c) {
    if (counts[c] > counts[largest]) largest = c;
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (isolated[i]) labels[i] = largest;
  }
  return labels;
}

Membership canonicalize(const std::vector<int>& raw, int k) {
  Membership g;
  g.k = k;
  g.labels.assign(raw.size(), 0);
  std::vector<int> remap(k, 0);
  int next = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (remap[raw[i]] == 0) remap[raw[i]] = ++next;
    g.labels[i] = remap[raw[i]];
  }
  return g;
}

Membership spectral_core(const Eigen::MatrixXd& S, int k,
                         const RecoverOpts& opts,
                         const std::vector<char>& isolated) {
  const int n = static_cast<int>(S.rows());
  if (k < 1 || k > n) throw std::invalid_argument("recover: need 1 <= k <= n");

  // Normalized affinity D^{-1/2} S D^{-1/2}; its top-k eigenvectors are the
  // bottom-k of the symmetric normalized Laplacian I - D^{-1/2} S D^{-1/2}.
  Eigen::VectorXd deg = S.rowwise().sum();
  Eigen::VectorXd dinv_sqrt(n);
  for (int i = 0; i < n; ++i) {
    dinv_sqrt[i] = deg[i] > 0.0 ? 1.0 / std::sqrt(deg[i]) : 0.0;
  }
  Eigen::MatrixXd M = dinv_sqrt.asDiagonal() * S * dinv_sqrt.asDiagonal();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("recover: eigendecomposition failed");
  }
  Eigen::MatrixXd emb = es.eigenvectors().rightCols(k);
  for (int i = 0; i < n; ++i) {
    const double norm = emb.row(i).norm();
    if (norm > 0.0) emb.row(i) /= norm;
  }

  KmeansResult best;
  for (int r = 0; r < opts.restarts; ++r) {
    SeqRng rng(opts.seed, Stream::Kmeans, static_cast<std::uint64_t>(r));
    KmeansResult cur = kmeans_once(emb, k, opts, rng);
    if (cur.inertia < best.inertia) best = std::move(cur);
  }

  return canonicalize(reassign_isolated_to_largest(best.labels, k, isolated),
                      k);
}

}  // namespace

std::vector<int> kmeans_rows(const Eigen::MatrixXd& X, int k,
                             const RecoverOpts& opts) {
  KmeansResult best;
  for (int r = 0; r < opts.restarts; ++r) {
    SeqRng rng(opts.seed, Stream::Kmeans, static_cast<std::uint64_t>(r));
    KmeansResult cur = kmeans_once(X, k, opts, rng);
    if (cur.inertia < best.inertia) best = std::move(cur);
  }
  return best.labels;
}

Membership spectral_cluster_affinity(const Eigen::MatrixXd& S, int k,
                                     const RecoverOpts& opts) {
  const int n = static_cast<int>(S.rows());
  std::vector<char> isolated(n, 0);
  for (int i = 0; i < n; ++i) {
    if (S.row(i).sum() <= 0.0) isolated[i] = 1;
  }
  return spectral_core(S, k, opts, isolated);
}

Membership cm_recover(const BinaryMatrix& A, int k, const RecoverOpts& opts) {
  const int n = A.n();
  Eigen::MatrixXd S(n, n);
  std::vector<char> isolated(n, 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      S(i, j) = A(i, j);
      if (A(i, j)) isolated[i] = 0;
    }
  }
  return spectral_core(S, k, opts, isolated);
}

Membership spectral_mean(const GraphSequence& seq, int k,
                         const RecoverOpts& opts) {
  if (seq.T() == 0) throw std::invalid_argument("spectral_mean: empty sequence");
  const int n = seq.n;
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
  for (const BinaryMatrix& a : seq.adj) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        S(i, j) += a(i, j);
      }
    }
  }
  S /= seq.T();
  std::vector<char> isolated(n, 0);
  for (int i = 0; i < n; ++i) {
    if (S.row(i).sum() <= 0.0) isolated[i] = 1;
  }
  return spectral_core(S, k, opts, isolated);
}

}  // namespace dynsbm
