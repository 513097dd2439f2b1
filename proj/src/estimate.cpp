#include "dynsbm/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dynsbm/kernels.hpp"

namespace dynsbm {

namespace {

constexpr double kProbFloor = 1e-9;

std::vector<std::int64_t> block_sizes(const Membership& g) {
  std::vector<std::int64_t> sizes(g.k, 0);
  for (int v : g.labels) sizes[v - 1]++;
  for (int r = 0; r < g.k; ++r) {
    if (sizes[r] == 0) {
      throw std::invalid_argument("estimate: empty community " +
                                  std::to_string(r + 1));
    }
  }
  return sizes;
}

// log(p^count) with the clamping convention: a structurally impossible
// event (p exactly 0 with a positive count) yields -infinity.
double count_log(std::int64_t count, double p) {
  if (count == 0) return 0.0;
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  return count * std::log(std::min(std::max(p, kProbFloor), 1.0 - kProbFloor));
}

double type1_marginal(double W, double mu, int t) {
  const double z = std::pow(1.0 - mu - mu * W, t - 1);
  return (z * W * W + W) / (1.0 + W);
}

struct MarginalSeries {
  // m[t-1](r,s) = per-snapshot marginal estimate; NaN marks singleton
  // diagonals, skipped by the fitters.
  std::vector<BlockMatrix> m;
};

MarginalSeries marginal_series(const GraphSequence& seq, const Membership& g) {
  MarginalSeries series;
  series.m.reserve(seq.T());
  for (int t = 0; t < seq.T(); ++t) {
    series.m.push_back(marginal_estimate(seq.adj[t], g));
  }
  return series;
}

// Pooled transition counts over t = 2..T, upper-triangle block pairs.
kernels::TransitionCounts pooled_transitions(const GraphSequence& seq,
                                             const Membership& g) {
  kernels::TransitionCounts pooled;
  pooled.k = g.k;
  const std::size_t sz = static_cast<std::size_t>(g.k) * g.k;
  pooled.n00.assign(sz, 0);
  pooled.n01.assign(sz, 0);
  pooled.n10.assign(sz, 0);
  pooled.n11.assign(sz, 0);
  for (int t = 1; t < seq.T(); ++t) {
    kernels::TransitionCounts tc =
        kernels::transition_counts(seq.adj[t - 1], seq.adj[t], g);
    for (std::size_t i = 0; i < sz; ++i) {
      pooled.n00[i] += tc.n00[i];
      pooled.n01[i] += tc.n01[i];
      pooled.n10[i] += tc.n10[i];
      pooled.n11[i] += tc.n11[i];
    }
  }
  return pooled;
}

}  // namespace

BlockMatrix marginal_estimate(const BinaryMatrix& A, const Membership& g) {
  const std::vector<std::int64_t> sizes = block_sizes(g);
  const int k = g.k;
  const kernels::CountMatrix counts = kernels::block_pair_counts(A, g);
  BlockMatrix w(k, k);
  for (int r = 0; r < k; ++r) {
    for (int s = 0; s < k; ++s) {
      const std::int64_t c = counts[static_cast<std::size_t>(r) * k + s];
      if (r == s) {
        const std::int64_t denom = sizes[r] * (sizes[r] - 1);
        w(r, s) = denom > 0 ? static_cast<double>(c) / denom
                            : std::numeric_limits<double>::quiet_NaN();
      } else {
        w(r, s) = static_cast<double>(c) / (sizes[r] * sizes[s]);
      }
    }
  }
  return w;
}

BlockMatrix marginal_recursion_general(const BlockMatrix& f,
                                       const BlockMatrix& h,
                                       const BlockMatrix& W1, int t) {
  if (t < 1) throw std::invalid_argument("recursion: t must be >= 1");
  BlockMatrix wt = W1;
  for (int step = 2; step <= t; ++step) {
    wt = h.cwiseProduct(wt) + f.cwiseProduct(BlockMatrix::Ones(wt.rows(), wt.cols()) - wt);
  }
  return wt;
}

BlockMatrix marginal_recursion_type1(const BlockMatrix& W,
                                     const BlockMatrix& mu, int t) {
  if (t < 1) throw std::invalid_argument("recursion: t must be >= 1");
  BlockMatrix wt(W.rows(), W.cols());
  for (int r = 0; r < W.rows(); ++r) {
    for (int s = 0; s < W.cols(); ++s) {
      wt(r, s) = type1_marginal(W(r, s), mu(r, s), t);
    }
  }
  return wt;
}

BlockMatrix marginal_recursion_type2(const BlockMatrix& W, double /*xi*/,
                                     int t) {
  if (t < 1) throw std::invalid_argument("recursion: t must be >= 1");
  return W;
}

FitType1Result fit_type1(const GraphSequence& seq, const Membership& g,
                         double grid_step) {
  if (seq.T() < 2) throw std::invalid_argument("fit_type1: needs T >= 2");
  const MarginalSeries series = marginal_series(seq, g);
  const int k = g.k;
  const int steps = static_cast<int>(std::lround(1.0 / grid_step));

  FitType1Result out;
  out.W = BlockMatrix::Zero(k, k);
  out.mu = BlockMatrix::Zero(k, k);
  for (int r = 0; r < k; ++r) {
    for (int s = r; s < k; ++s) {
      double w_sum = 0.0, mu_sum = 0.0;
      int used = 0;
      for (int t = 1; t <= seq.T(); ++t) {
        const double target = series.m[t - 1](r, s);
        if (std::isnan(target)) continue;
        double best = std::numeric_limits<double>::infinity();
        double best_w = 0.0, best_mu = 0.0;
        for (int iw = 0; iw <= steps; ++iw) {
          const double W = iw * grid_step;
          for (int imu = 0; imu <= steps; ++imu) {
            const double mu = imu * grid_step;
            if (mu * (1.0 + W) > 1.0 + 1e-12) break;
            const double resid = type1_marginal(W, mu, t) - target;
            const double obj = resid * resid;
            if (obj < best) {
              best = obj;
              best_w = W;
              best_mu = mu;
            }
          }
        }
        w_sum += best_w;
        mu_sum += best_mu;
        ++used;
      }
      if (used == 0) throw std::invalid_argument("fit_type1: no usable snapshots");
      out.W(r, s) = out.W(s, r) = w_sum / used;
      out.mu(r, s) = out.mu(s, r) = mu_sum / used;
    }
  }
  return out;
}

FitType1Result fit_type1_joint(const GraphSequence& seq, const Membership& g,
                               double grid_step) {
  if (seq.T() < 2) throw std::invalid_argument("fit_type1: needs T >= 2");
  const MarginalSeries series = marginal_series(seq, g);
  const int k = g.k;

  auto objective = [&](int r, int s, double W, double mu) {
    double obj = 0.0;
    for (int t = 1; t <= seq.T(); ++t) {
      const double target = series.m[t - 1](r, s);
      if (std::isnan(target)) continue;
      const double resid = type1_marginal(W, mu, t) - target;
      obj += resid * resid;
    }
    return obj;
  };

  FitType1Result out;
  out.W = BlockMatrix::Zero(k, k);
  out.mu = BlockMatrix::Zero(k, k);
  for (int r = 0; r < k; ++r) {
    for (int s = r; s < k; ++s) {
      double best = std::numeric_limits<double>::infinity();
      double best_w = 0.0, best_mu = 0.0;
      auto scan = [&](double w_lo, double w_hi, double mu_lo, double mu_hi,
                      double step) {
        for (double W = w_lo; W <= w_hi + 1e-12; W += step) {
          for (double mu = mu_lo; mu <= mu_hi + 1e-12; mu += step) {
            if (mu * (1.0 + W) > 1.0 + 1e-12) break;
            const double obj = objective(r, s, W, mu);
            if (obj < best) {
              best = obj;
              best_w = W;
              best_mu = mu;
            }
          }
        }
      };
      scan(0.0, 1.0, 0.0, 1.0, grid_step);
      const double fine = grid_step / 10.0;
      scan(std::max(0.0, best_w - grid_step), std::min(1.0, best_w + grid_step),
           std::max(0.0, best_mu - grid_step),
           std::min(1.0, best_mu + grid_step), fine);
      out.W(r, s) = out.W(s, r) = best_w;
      out.mu(r, s) = out.mu(s, r) = best_mu;
    }
  }
  return out;
}

FitType2Result fit_type2(const GraphSequence& seq, const Membership& g,
                         double grid_step) {
  if (seq.T() < 2) throw std::invalid_argument("fit_type2: needs T >= 2");
  const MarginalSeries series = marginal_series(seq, g);
  const int k = g.k;

  FitType2Result out;
  out.W = BlockMatrix::Zero(k, k);
  for (int r = 0; r < k; ++r) {
    for (int s = 0; s < k; ++s) {
      double sum = 0.0;
      int used = 0;
      for (const BlockMatrix& m : series.m) {
        if (!std::isnan(m(r, s))) {
          sum += m(r, s);
          ++used;
        }
      }
      out.W(r, s) = used > 0 ? sum / used
                             : std::numeric_limits<double>::quiet_NaN();
    }
  }

  const kernels::TransitionCounts tc = pooled_transitions(seq, g);
  const int steps = static_cast<int>(std::lround(1.0 / grid_step));
  double best = -std::numeric_limits<double>::infinity();
  double best_xi = 0.0;
  for (int ix = 0; ix <= steps; ++ix) {
    const double xi = ix * grid_step;
    double ll = 0.0;
    for (int r = 0; r < k; ++r) {
      for (int s = r; s < k; ++s) {
        const double w = out.W(r, s);
        if (std::isnan(w)) continue;
        const std::size_t idx = static_cast<std::size_t>(r) * k + s;
        ll += count_log(tc.n01[idx], (1.0 - xi) * w);
        ll += count_log(tc.n00[idx], 1.0 - (1.0 - xi) * w);
        ll += count_log(tc.n11[idx], xi + (1.0 - xi) * w);
        ll += count_log(tc.n10[idx], (1.0 - xi) * (1.0 - w));
      }
    }
    if (ll > best) {
      best = ll;
      best_xi = xi;
    }
  }
  out.xi = best_xi;
  return out;
}

double loglik_general(const GraphSequence& seq, const Membership& g,
                      const DynamicsParams& params) {
  if (seq.T() < 1) throw std::invalid_argument("loglik: empty sequence");
  const std::vector<std::int64_t> sizes = block_sizes(g);
  const int k = g.k;

  // First snapshot: Bernoulli(W^1) per pair.
  const kernels::CountMatrix first = kernels::block_pair_counts(seq.adj[0], g);
  const BlockMatrix& w1 = params.W_at(1);
  double ll = 0.0;
  for (int r = 0; r < k; ++r) {
    for (int s = r; s < k; ++s) {
      const std::int64_t pairs = r == s ? sizes[r] * (sizes[r] - 1) / 2
                                        : sizes[r] * sizes[s];
      // Ordered counts: within-block edges were counted twice.
      const std::int64_t edges =
          r == s ? first[static_cast<std::size_t>(r) * k + s] / 2
                 : first[static_cast<std::size_t>(r) * k + s];
      ll += count_log(edges, w1(r, s));
      ll += count_log(pairs - edges, 1.0 - w1(r, s));
    }
  }

  for (int t = 2; t <= seq.T(); ++t) {
    const kernels::TransitionCounts tc =
        kernels::transition_counts(seq.adj[t - 2], seq.adj[t - 1], g);
    BlockMatrix f, h;
    switch (params.model) {
      case Model::TypeI:
        f = params.mu.cwiseProduct(params.W_at(t));
        h = BlockMatrix::Ones(k, k) - params.mu;
        break;
      case Model::TypeII:
        f = (1.0 - params.xi) * params.W_at(t);
        h = f.array() + params.xi;
        break;
      case Model::General:
        f = params.f;
        h = params.h;
        break;
    }
    for (int r = 0; r < k; ++r) {
      for (int s = r; s < k; ++s) {
        const std::size_t idx = static_cast<std::size_t>(r) * k + s;
        ll += count_log(tc.n01[idx], f(r, s));
        ll += count_log(tc.n00[idx], 1.0 - f(r, s));
        ll += count_log(tc.n11[idx], h(r, s));
        ll += count_log(tc.n10[idx], 1.0 - h(r, s));
      }
    }
  }
  return ll;
}

DynamicsParams fit_mle_general(const GraphSequence& seq, const Membership& g,
                               Model model, const MleOpts& opts) {
  if (seq.T() < 1) throw std::invalid_argument("fit_mle: empty sequence");
  const std::vector<std::int64_t> sizes = block_sizes(g);
  const int k = g.k;
  const kernels::CountMatrix first = kernels::block_pair_counts(seq.adj[0], g);

  auto first_counts = [&](int r, int s, std::int64_t& pairs,
                          std::int64_t& edges) {
    pairs = r == s ? sizes[r] * (sizes[r] - 1) / 2 : sizes[r] * sizes[s];
    edges = r == s ? first[static_cast<std::size_t>(r) * k + s] / 2
                   : first[static_cast<std::size_t>(r) * k + s];
  };

  DynamicsParams out;
  out.model = model;

  if (model == Model::TypeI && opts.time_varying_w) {
    // Profile likelihood over mu with per-step W^t at its conditional MLE.
    std::vector<kernels::TransitionCounts> per_t;
    for (int t = 1; t < seq.T(); ++t) {
      per_t.push_back(
          kernels::transition_counts(seq.adj[t - 1], seq.adj[t], g));
    }
    out.W.assign(seq.T(), BlockMatrix::Zero(k, k));
    out.mu = BlockMatrix::Zero(k, k);
    for (int r = 0; r < k; ++r) {
      for (int s = r; s < k; ++s) {
        std::int64_t pairs, edges;
        first_counts(r, s, pairs, edges);
        const std::size_t idx = static_cast<std::size_t>(r) * k + s;

        auto profile = [&](double mu, std::vector<double>* w_out) {
          double ll = 0.0;
          for (std::size_t ti = 0; ti < per_t.size(); ++ti) {
            const auto& tc = per_t[ti];
            const std::int64_t n0 = tc.n00[idx] + tc.n01[idx];
            double wt = 0.0;
            if (mu > 0.0 && n0 > 0) {
              wt = std::min(1.0, double(tc.n01[idx]) / double(n0) / mu);
            }
            ll += count_log(tc.n01[idx], mu * wt);
            ll += count_log(tc.n00[idx], 1.0 - mu * wt);
            ll += count_log(tc.n11[idx], 1.0 - mu);
            ll += count_log(tc.n10[idx], mu);
            if (w_out) w_out->push_back(wt);
          }
          return ll;
        };

        double best = -std::numeric_limits<double>::infinity();
        double best_mu = 0.0;
        auto scan = [&](double lo, double hi, double step) {
          for (double mu = lo; mu <= hi + 1e-12; mu += step) {
            const double ll = profile(mu, nullptr);
            if (ll > best) {
              best = ll;
              best_mu = mu;
            }
          }
        };
        scan(0.0, 1.0, opts.coarse_step);
        scan(std::max(0.0, best_mu - opts.coarse_step),
             std::min(1.0, best_mu + opts.coarse_step), opts.fine_step);

        std::vector<double> wts;
        profile(best_mu, &wts);
        out.mu(r, s) = out.mu(s, r) = best_mu;
        const double w1_hat = pairs > 0 ? double(edges) / pairs : 0.0;
        out.W[0](r, s) = out.W[0](s, r) = w1_hat;
        for (int t = 2; t <= seq.T(); ++t) {
          out.W[t - 1](r, s) = out.W[t - 1](s, r) = wts[t - 2];
        }
      }
    }
    return out;
  }

  const kernels::TransitionCounts tc = pooled_transitions(seq, g);

  if (model == Model::TypeI) {
    out.W.assign(1, BlockMatrix::Zero(k, k));
    out.mu = BlockMatrix::Zero(k, k);
    for (int r = 0; r < k; ++r) {
      for (int s = r; s < k; ++s) {
        std::int64_t pairs, edges;
        first_counts(r, s, pairs, edges);
        const std::size_t idx = static_cast<std::size_t>(r) * k + s;
        auto ll_at = [&](double W, double mu) {
          double ll = count_log(edges, W) + count_log(pairs - edges, 1.0 - W);
          ll += count_log(tc.n01[idx], mu * W);
          ll += count_log(tc.n00[idx], 1.0 - mu * W);
          ll += count_log(tc.n11[idx], 1.0 - mu);
          ll += count_log(tc.n10[idx], mu);
          return ll;
        };
        double best = -std::numeric_limits<double>::infinity();
        double best_w = 0.0, best_mu = 0.0;
        auto scan = [&](double w_lo, double w_hi, double mu_lo, double mu_hi,
                        double step) {
          for (double W = w_lo; W <= w_hi + 1e-12; W += step) {
            for (double mu = mu_lo; mu <= mu_hi + 1e-12; mu += step) {
              if (mu * (1.0 + W) > 1.0 + 1e-12) break;
              const double ll = ll_at(W, mu);
              if (ll > best) {
                best = ll;
                best_w = W;
                best_mu = mu;
              }
            }
          }
        };
        scan(0.0, 1.0, 0.0, 1.0, opts.coarse_step);
        scan(std::max(0.0, best_w - opts.coarse_step),
             std::min(1.0, best_w + opts.coarse_step),
             std::max(0.0, best_mu - opts.coarse_step),
             std::min(1.0, best_mu + opts.coarse_step), opts.fine_step);
        out.W[0](r, s) = out.W[0](s, r) = best_w;
        out.mu(r, s) = out.mu(s, r) = best_mu;
      }
    }
    return out;
  }

  if (model == Model::TypeII) {
    const FitType2Result base = fit_type2(seq, g, opts.coarse_step);
    out.W.assign(1, base.W);
    // Refine xi around the coarse maximizer.
    auto ll_at = [&](double xi) {
      double ll = 0.0;
      for (int r = 0; r < k; ++r) {
        for (int s = r; s < k; ++s) {
          const double w = base.W(r, s);
          if (std::isnan(w)) continue;
          const std::size_t idx = static_cast<std::size_t>(r) * k + s;
          ll += count_log(tc.n01[idx], (1.0 - xi) * w);
          ll += count_log(tc.n00[idx], 1.0 - (1.0 - xi) * w);
          ll += count_log(tc.n11[idx], xi + (1.0 - xi) * w);
          ll += count_log(tc.n10[idx], (1.0 - xi) * (1.0 - w));
        }
      }
      return ll;
    };
    double best = -std::numeric_limits<double>::infinity();
    double best_xi = base.xi;
    for (double xi = std::max(0.0, base.xi - opts.coarse_step);
         xi <= std::min(1.0, base.xi + opts.coarse_step) + 1e-12;
         xi += opts.fine_step) {
      const double ll = ll_at(xi);
      if (ll > best) {
        best = ll;
        best_xi = xi;
      }
    }
    out.xi = best_xi;
    return out;
  }

  // General: independent (f, h) per block pair; W^1 from the first
  // snapshot term alone, where the count estimate is the exact MLE.
  out.W.assign(1, BlockMatrix::Zero(k, k));
  out.f = BlockMatrix::Zero(k, k);
  out.h = BlockMatrix::Zero(k, k);
  for (int r = 0; r < k; ++r) {
    for (int s = r; s < k; ++s) {
      std::int64_t pairs, edges;
      first_counts(r, s, pairs, edges);
      out.W[0](r, s) = out.W[0](s, r) =
          pairs > 0 ? double(edges) / pairs : 0.0;
      const std::size_t idx = static_cast<std::size_t>(r) * k + s;
      auto fit_rate = [&](std::int64_t hits, std::int64_t misses) {
        double best = -std::numeric_limits<double>::infinity();
        double best_p = 0.0;
        auto scan = [&](double lo, double hi, double step) {
          for (double p = lo; p <= hi + 1e-12; p += step) {
            const double ll = count_log(hits, p) + count_log(misses, 1.0 - p);
            if (ll > best) {
              best = ll;
              best_p = p;
            }
          }
        };
        scan(0.0, 1.0, opts.coarse_step);
        scan(std::max(0.0, best_p - opts.coarse_step),
             std::min(1.0, best_p + opts.coarse_step), opts.fine_step);
        return best_p;
      };
      out.f(r, s) = out.f(s, r) = fit_rate(tc.n01[idx], tc.n00[idx]);
      out.h(r, s) = out.h(s, r) = fit_rate(tc.n11[idx], tc.n10[idx]);
    }
  }
  return out;
}

}  // namespace dynsbm
