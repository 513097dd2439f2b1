#include "dynsbm/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dynsbm/kernels.hpp"
#include "dynsbm/rng.hpp"

namespace dynsbm {

namespace {

std::vector<double> effective_prior(const GenConfig& cfg) {
  if (cfg.prior.empty()) {
    return std::vector<double>(cfg.k, 1.0 / cfg.k);
  }
  if (static_cast<int>(cfg.prior.size()) != cfg.k) {
    throw std::invalid_argument("gen: prior length != k");
  }
  double sum = std::accumulate(cfg.prior.begin(), cfg.prior.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("gen: prior does not sum to 1");
  }
  return cfg.prior;
}

int sample_from_prior(const std::vector<double>& prior, double u) {
  double acc = 0.0;
  for (std::size_t l = 0; l < prior.size(); ++l) {
    acc += prior[l];
    if (u < acc) return static_cast<int>(l) + 1;
  }
  return static_cast<int>(prior.size());
}

void type1_rates(const BlockMatrix& W, const BlockMatrix& mu, BlockMatrix& f,
                 BlockMatrix& h) {
  f = mu.cwiseProduct(W);
  h = BlockMatrix::Constant(mu.rows(), mu.cols(), 1.0) - mu;
  for (int r = 0; r < f.rows(); ++r) {
    for (int s = 0; s < f.cols(); ++s) {
      if (f(r, s) < 0.0 || f(r, s) > 1.0 || h(r, s) < 0.0 || h(r, s) > 1.0) {
        throw std::invalid_argument("type-I step: transition rate outside [0,1]");
      }
    }
  }
}

void type2_rates(const BlockMatrix& W, double xi, BlockMatrix& f,
                 BlockMatrix& h) {
  if (xi < 0.0 || xi > 1.0) {
    throw std::invalid_argument("type-II step: xi outside [0,1]");
  }
  f = (1.0 - xi) * W;
  h = f.array() + xi;
}

}  // namespace

std::pair<Membership, BinaryMatrix> gen_initial(const GenConfig& cfg) {
  if (cfg.n <= 0 || cfg.k < 1) throw std::invalid_argument("gen: bad n or k");
  const std::vector<double> prior = effective_prior(cfg);
  Membership g;
  g.k = cfg.k;
  g.labels.resize(cfg.n);
  for (int i = 0; i < cfg.n; ++i) {
    const double u = uniform_at(cfg.seed, Stream::InitialMembership, 0, i);
    g.labels[i] = sample_from_prior(prior, u);
  }
  BinaryMatrix a1 = kernels::sample_sbm(g, cfg.dynamics.W_at(1), cfg.seed, 1);
  return {std::move(g), std::move(a1)};
}

BinaryMatrix step_type1(const BinaryMatrix& prev, const Membership& g,
                        const BlockMatrix& W, const BlockMatrix& mu,
                        std::uint64_t seed, int t) {
  BlockMatrix f, h;
  type1_rates(W, mu, f, h);
  return kernels::step_markov(prev, g, f, h, seed, t);
}

BinaryMatrix step_type2(const BinaryMatrix& prev, const Membership& g,
                        const BlockMatrix& Wt, double xi, std::uint64_t seed,
                        int t) {
  BlockMatrix f, h;
  type2_rates(Wt, xi, f, h);
  return kernels::step_markov(prev, g, f, h, seed, t);
}

GeneratedSequence gen_sequence(const GenConfig& cfg) {
  if (cfg.T < 1) throw std::invalid_argument("gen: T must be positive");
  validate_dynamics(cfg.dynamics);
  if (cfg.community_model == CommunityModel::Changing) {
    if (cfg.minority_fraction < 0.0 || cfg.minority_fraction >= 1.0) {
      throw std::invalid_argument("gen: minority fraction must be in [0,1)");
    }
    if (!cfg.minority_sets.empty() &&
        static_cast<int>(cfg.minority_sets.size()) != cfg.T - 1) {
      throw std::invalid_argument("gen: need T-1 explicit minority sets");
    }
    if (cfg.dynamics.model != Model::TypeII) {
      throw std::invalid_argument("gen: changing mode uses the type-II dynamic");
    }
  }

  GeneratedSequence out;
  auto [g1, a1] = gen_initial(cfg);
  out.seq.n = cfg.n;
  out.seq.adj.push_back(std::move(a1));
  out.memberships.push_back(g1);
  out.mask = MajorityMask::all_majority(std::max(cfg.T - 1, 0), cfg.n);

  std::vector<std::uint8_t> ever_minority(cfg.n, 0);

  for (int t = 2; t <= cfg.T; ++t) {
    Membership g = out.memberships.back();

    if (cfg.community_model == CommunityModel::Changing) {
      std::vector<int> minority;
      if (!cfg.minority_sets.empty()) {
        minority = cfg.minority_sets[t - 2];
        for (int i : minority) {
          if (i < 0 || i >= cfg.n) {
            throw std::invalid_argument("gen: minority node out of range");
          }
          if (ever_minority[i]) {
            throw std::invalid_argument(
                "gen: node listed as minority twice (staged protocol)");
          }
        }
      } else if (t - 1 >= cfg.first_change_step && cfg.minority_fraction > 0) {
        std::vector<int> eligible;
        for (int i = 0; i < cfg.n; ++i) {
          if (!ever_minority[i]) eligible.push_back(i);
        }
        const int m = static_cast<int>(
            std::lround(cfg.minority_fraction * eligible.size()));
        SeqRng rng(cfg.seed, Stream::MinoritySelect, t);
        for (int pick = 0; pick < m && !eligible.empty(); ++pick) {
          const std::size_t idx =
              pick + rng.below(eligible.size() - pick);
          std::swap(eligible[pick], eligible[idx]);
          minority.push_back(eligible[pick]);
        }
      }
      for (int i : minority) {
        ever_minority[i] = 1;
        out.mask(t - 2, i) = 0;
        // Uniform over the k-1 other labels.
        const double u = uniform_at(cfg.seed, Stream::MembershipChange, t, i);
        int offset = 1 + static_cast<int>(u * (cfg.k - 1));
        offset = std::min(offset, cfg.k - 1);
        g.labels[i] = (g.labels[i] - 1 + offset) % cfg.k + 1;
      }
    }

    BinaryMatrix next;
    switch (cfg.dynamics.model) {
      case Model::TypeI:
        next = step_type1(out.seq.adj.back(), g, cfg.dynamics.W_at(t),
                          cfg.dynamics.mu, cfg.seed, t);
        break;
      case Model::TypeII:
        next = step_type2(out.seq.adj.back(), g, cfg.dynamics.W_at(t),
                          cfg.dynamics.xi, cfg.seed, t);
        break;
      case Model::General:
        next = kernels::step_markov(out.seq.adj.back(), g, cfg.dynamics.f,
                                    cfg.dynamics.h, cfg.seed, t);
        break;
    }
    out.seq.adj.push_back(std::move(next));
    out.memberships.push_back(std::move(g));
  }
  return out;
}

std::vector<Membership> gen_noisy_memberships(const Membership& g_star,
                                              double eps, int T,
                                              std::uint64_t seed) {
  if (eps < 0.0 || eps >= 1.0) {
    throw std::invalid_argument("noisy memberships: eps must be in [0,1)");
  }
  const int n = g_star.n();
  const int k = g_star.k;
  std::vector<Membership> out(T);
  for (int t = 0; t < T; ++t) {
    out[t].k = k;
    out[t].labels = g_star.labels;
    for (int i = 0; i < n; ++i) {
      const double u = uniform_at(seed, Stream::NoisyLabel, t, i);
      if (u < eps) {
        const double v = uniform_at(seed, Stream::NoisyTarget, t, i);
        int offset = 1 + static_cast<int>(v * (k - 1));
        offset = std::min(offset, k - 1);
        out[t].labels[i] = (g_star.labels[i] - 1 + offset) % k + 1;
      }
    }
  }
  return out;
}

}  // namespace dynsbm
