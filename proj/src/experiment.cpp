#include "dynsbm/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "dynsbm/estimate.hpp"
#include "dynsbm/io.hpp"
#include "dynsbm/metrics.hpp"
#include "dynsbm/predict.hpp"
#include "dynsbm/recover.hpp"
#include "dynsbm/rng.hpp"
#include "dynsbm/unify.hpp"

namespace dynsbm {

namespace {

std::uint64_t run_seed(std::uint64_t seed, int run) {
  return hash3(seed, stream_key(Stream::MonteCarlo), static_cast<std::uint64_t>(run));
}

std::vector<Membership> recover_all(const GraphSequence& seq, int k,
                                    std::uint64_t seed) {
  std::vector<Membership> estimates(seq.T());
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < seq.T(); ++t) {
    RecoverOpts opts;
    opts.seed = hash3(seed, stream_key(Stream::Kmeans, 0xABCD), t);
    estimates[t] = cm_recover(seq.adj[t], k, opts);
  }
  return estimates;
}

Membership unify_with(UnifyStrategy strategy,
                      const std::vector<Membership>& estimates,
                      const GraphSequence& seq, int k, std::uint64_t seed,
                      double eps) {
  RecoverOpts opts;
  opts.seed = hash3(seed, stream_key(Stream::Kmeans, 0xFACE), 0);
  switch (strategy) {
    case UnifyStrategy::CM:
      return unify_cm(estimates, eps, opts);
    case UnifyStrategy::LP:
      return unify_lp(estimates);
    case UnifyStrategy::Threshold:
      return estimates.size() >= 2
                 ? unify_threshold(
                       estimates,
                       std::max<int>(1, static_cast<int>(estimates.size()) / 2),
                       opts)
                 : estimates[0];
    case UnifyStrategy::SpectralMean:
      return spectral_mean(seq, k, opts);
  }
  throw std::logic_error("unknown unify strategy");
}

// Permutes a fitted block matrix into the truth's label space using the
// node-level alignment between the estimated and true memberships.
BlockMatrix align_to_truth(const BlockMatrix& fitted, const Membership& g_hat,
                           const Membership& g_star) {
  const PermutationMatrix tau = align_permutation(g_hat, g_star);
  const int k = static_cast<int>(fitted.rows());
  BlockMatrix out(k, k);
  for (int r = 0; r < k; ++r) {
    for (int s = 0; s < k; ++s) {
      out(tau.map[r], tau.map[s]) = fitted(r, s);
    }
  }
  return out;
}

double max_abs_diff(const BlockMatrix& a, const BlockMatrix& b) {
  double m = 0.0;
  for (int r = 0; r < a.rows(); ++r) {
    for (int s = 0; s < a.cols(); ++s) {
      if (!std::isnan(a(r, s)) && !std::isnan(b(r, s))) {
        m = std::max(m, std::abs(a(r, s) - b(r, s)));
      }
    }
  }
  return m;
}

std::vector<int> default_eval_ts(const ExperimentConfig& cfg) {
  if (!cfg.eval_ts.empty()) return cfg.eval_ts;
  std::vector<int> ts;
  for (int t = 2; t <= cfg.gen.T; ++t) ts.push_back(t);
  return ts;
}

void run_a(const ExperimentConfig& cfg, int run, MetricsReport& rep) {
  GenConfig g_cfg = cfg.gen;
  g_cfg.seed = run_seed(cfg.seed, run);
  g_cfg.dynamics.model = Model::TypeII;
  g_cfg.dynamics.W.assign(1, BlockMatrix::Zero(g_cfg.k, g_cfg.k));
  auto [g_star, a1] = gen_initial(g_cfg);
  (void)a1;

  const std::vector<Membership> noisy =
      gen_noisy_memberships(g_star, cfg.eps, g_cfg.T, g_cfg.seed);
  double input_err = 0.0;
  for (const Membership& e : noisy) input_err += 1.0 - nmi(e, g_star);
  input_err /= noisy.size();
  rep.add("input_error", run, -1, input_err);

  RecoverOpts opts;
  opts.seed = hash3(g_cfg.seed, stream_key(Stream::Kmeans, 0xFACE), 0);
  rep.add("unify_cm_error", run, -1,
          1.0 - nmi(unify_cm(noisy, cfg.eps, opts), g_star));
  rep.add("unify_lp_error", run, -1, 1.0 - nmi(unify_lp(noisy), g_star));
}

void run_b(const ExperimentConfig& cfg, int run, MetricsReport& rep) {
  GenConfig g_cfg = cfg.gen;
  g_cfg.seed = run_seed(cfg.seed, run);
  const GeneratedSequence data = gen_sequence(g_cfg);
  const Membership& truth = data.truth();

  const std::vector<Membership> estimates =
      recover_all(data.seq, g_cfg.k, g_cfg.seed);
  rep.add("unify_lp_error", run, -1, 1.0 - nmi(unify_lp(estimates), truth));
  rep.add("unify_cm_error", run, -1,
          1.0 - nmi(unify_with(UnifyStrategy::CM, estimates, data.seq, g_cfg.k,
                               g_cfg.seed, 0.0),
                    truth));
  rep.add("spectral_mean_error", run, -1,
          1.0 - nmi(unify_with(UnifyStrategy::SpectralMean, estimates,
                               data.seq, g_cfg.k, g_cfg.seed, 0.0),
                    truth));
}

void run_c(const ExperimentConfig& cfg, int run, MetricsReport& rep) {
  GenConfig g_cfg = cfg.gen;
  g_cfg.seed = run_seed(cfg.seed, run);
  const GeneratedSequence data = gen_sequence(g_cfg);
  const int n = g_cfg.n;
  const double xi_true = g_cfg.dynamics.xi;

  // Staged protocol: at evaluation time t, keep nodes that were majority
  // through mask row t-3 (0-based); the minorities of row t-2 are the ones
  // recovered one step ahead, then retired.
  for (int t = g_cfg.first_change_step + 1; t <= g_cfg.T; ++t) {
    std::vector<int> survivors;
    for (int i = 0; i < n; ++i) {
      bool ok = true;
      for (int row = 0; row <= t - 4; ++row) {
        if (data.mask(row, i) == 0) {
          ok = false;
          break;
        }
      }
      if (ok) survivors.push_back(i);
    }

    const int m = static_cast<int>(survivors.size());
    GraphSequence sub;
    sub.n = m;
    for (int s = 0; s < t; ++s) {
      BinaryMatrix b(m);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          b(i, j) = data.seq.adj[s](survivors[i], survivors[j]);
        }
      }
      sub.adj.push_back(std::move(b));
    }
    MajorityMask sub_mask = MajorityMask::all_majority(t - 1, m);
    for (int row = 0; row < t - 1; ++row) {
      for (int i = 0; i < m; ++i) {
        sub_mask(row, i) = data.mask(row, survivors[i]);
      }
    }

    MinorityRecoveryOpts opts;
    opts.recover.seed = hash3(g_cfg.seed, stream_key(Stream::Kmeans, 0xC0), t);
    opts.grid_step = cfg.grid_step;
    const MinorityRecovery rec = recover_with_minorities(sub, sub_mask,
                                                         g_cfg.k, opts);

    Membership truth_t;
    truth_t.k = g_cfg.k;
    for (int i = 0; i < m; ++i) {
      truth_t.labels.push_back(data.memberships[t - 1].labels[survivors[i]]);
    }

    rep.add("n_nodes", run, t, m);
    rep.add("n_minority", run, t,
            static_cast<double>(rec.minority_nodes.size()));
    if (!rec.minority_nodes.empty()) {
      rep.add("minority_error", run, t,
              1.0 - nmi_subset(rec.g_t, truth_t, rec.minority_nodes));
    }
    rep.add("xi_abs_err", run, t, std::abs(rec.xi_hat - xi_true));
    rep.add("align_rule_highest", run, t,
            rec.rule == AlignRule::Highest ? 1.0 : 0.0);
  }
}

void run_d_like(const ExperimentConfig& cfg, int run, MetricsReport& rep,
                bool iid_w) {
  GenConfig g_cfg = cfg.gen;
  g_cfg.seed = run_seed(cfg.seed, run);

  if (iid_w) {
    // Fresh symmetric assortative draw per step.
    SeqRng rng(g_cfg.seed, Stream::ParamDraw);
    g_cfg.dynamics.W.assign(g_cfg.T, BlockMatrix::Zero(g_cfg.k, g_cfg.k));
    for (int t = 0; t < g_cfg.T; ++t) {
      for (int r = 0; r < g_cfg.k; ++r) {
        for (int s = r; s < g_cfg.k; ++s) {
          const double v = r == s ? 0.25 + 0.2 * rng.uniform()
                                  : 0.05 + 0.2 * rng.uniform();
          g_cfg.dynamics.W[t](r, s) = g_cfg.dynamics.W[t](s, r) = v;
        }
      }
    }
  }

  const GeneratedSequence data = gen_sequence(g_cfg);
  const Membership& truth = data.truth();
  const std::vector<Membership> estimates =
      recover_all(data.seq, g_cfg.k, g_cfg.seed);

  for (int t : default_eval_ts(cfg)) {
    if (t > g_cfg.T) continue;
    GraphSequence prefix;
    prefix.n = g_cfg.n;
    prefix.adj.assign(data.seq.adj.begin(), data.seq.adj.begin() + t);
    const std::vector<Membership> prefix_est(estimates.begin(),
                                             estimates.begin() + t);
    const Membership unified = unify_with(cfg.unify, prefix_est, prefix,
                                          g_cfg.k, g_cfg.seed + t, 0.0);
    rep.add("community_error", run, t, 1.0 - nmi(unified, truth));

    if (iid_w) {
      MleOpts mle;
      mle.time_varying_w = true;
      const DynamicsParams fit =
          fit_mle_general(prefix, unified, Model::TypeI, mle);
      double frob_sum = 0.0;
      for (int s = 0; s < t; ++s) {
        frob_sum += frob_error(align_to_truth(fit.W[s], unified, truth),
                               g_cfg.dynamics.W[s]);
      }
      rep.add("w_frob_err", run, t, frob_sum / t);
      rep.add("mu_abs_err", run, t,
              max_abs_diff(align_to_truth(fit.mu, unified, truth),
                           g_cfg.dynamics.mu));
    } else if (cfg.fit_model == Model::TypeI) {
      const FitType1Result fit =
          cfg.joint_type1_fit ? fit_type1_joint(prefix, unified, cfg.grid_step)
                              : fit_type1(prefix, unified, cfg.grid_step);
      const BlockMatrix w_hat = align_to_truth(fit.W, unified, truth);
      const BlockMatrix mu_hat = align_to_truth(fit.mu, unified, truth);
      rep.add("w_abs_err", run, t, max_abs_diff(w_hat, g_cfg.dynamics.W[0]));
      rep.add("w_frob_err", run, t, frob_error(w_hat, g_cfg.dynamics.W[0]));
      rep.add("mu_abs_err", run, t, max_abs_diff(mu_hat, g_cfg.dynamics.mu));
    } else if (cfg.fit_model == Model::TypeII) {
      const FitType2Result fit = fit_type2(prefix, unified, cfg.grid_step);
      const BlockMatrix w_hat = align_to_truth(fit.W, unified, truth);
      rep.add("w_abs_err", run, t, max_abs_diff(w_hat, g_cfg.dynamics.W[0]));
      rep.add("xi_abs_err", run, t, std::abs(fit.xi - g_cfg.dynamics.xi));
      if (g_cfg.dynamics.xi > 0.0) {
        rep.add("xi_rel_err", run, t,
                std::abs(fit.xi - g_cfg.dynamics.xi) / g_cfg.dynamics.xi);
      }
    }
  }
}

void run_g(const ExperimentConfig& cfg, MetricsReport& rep) {
  if (cfg.dataset_path.empty()) {
    throw std::invalid_argument("experiment G needs a dataset path");
  }
  const GraphSequence seq = load_snapshots(cfg.dataset_path);
  const int k = cfg.gen.k;
  const int l = cfg.window;
  if (seq.T() < l + 1) {
    throw std::invalid_argument("experiment G: sequence shorter than window+1");
  }

  for (int t = l + 1; t <= seq.T(); ++t) {
    GraphSequence window;
    window.n = seq.n;
    window.adj.assign(seq.adj.begin() + (t - 1 - l), seq.adj.begin() + (t - 1));
    const std::vector<Membership> estimates =
        recover_all(window, k, hash3(cfg.seed, 0x6, t));
    const Membership g = unify_with(cfg.unify, estimates, window, k,
                                    hash3(cfg.seed, 0x7, t), 0.0);
    MleOpts mle;
    mle.coarse_step = cfg.grid_step * 2;
    mle.fine_step = cfg.grid_step / 5;
    const DynamicsParams fit = fit_mle_general(window, g, cfg.fit_model, mle);
    const Eigen::MatrixXd scores =
        predict_links(window.adj.back(), g, fit);

    std::vector<double> pair_scores;
    std::vector<int> labels;
    pair_scores.reserve(static_cast<std::size_t>(seq.n) * (seq.n - 1) / 2);
    for (int i = 0; i < seq.n; ++i) {
      for (int j = i + 1; j < seq.n; ++j) {
        pair_scores.push_back(scores(i, j));
        labels.push_back(seq.adj[t - 1](i, j));
      }
    }
    rep.add("auc", 0, t, auc(pair_scores, labels));
  }
}

nlohmann::json config_echo(const ExperimentConfig& cfg) {
  static const char* tag_names[] = {"A", "B", "C", "D", "E", "G", "custom"};
  nlohmann::json j;
  j["experiment"] = tag_names[static_cast<int>(cfg.tag)];
  j["runs"] = cfg.runs;
  j["seed"] = cfg.seed;
  j["n"] = cfg.gen.n;
  j["k"] = cfg.gen.k;
  j["T"] = cfg.gen.T;
  j["eps"] = cfg.eps;
  j["grid_step"] = cfg.grid_step;
  if (!cfg.dataset_path.empty()) j["dataset"] = cfg.dataset_path;
  if (cfg.tag == ExperimentTag::G) j["window"] = cfg.window;
  switch (cfg.gen.dynamics.model) {
    case Model::TypeI: j["model"] = "type1"; break;
    case Model::TypeII: j["model"] = "type2"; j["xi"] = cfg.gen.dynamics.xi; break;
    case Model::General: j["model"] = "general"; break;
  }
  return j;
}

}  // namespace

double MetricsReport::mean(const std::string& metric) const {
  double sum = 0.0;
  int count = 0;
  for (const StepRecord& r : records) {
    if (r.metric == metric) {
      sum += r.value;
      ++count;
    }
  }
  if (count == 0) throw std::out_of_range("no records for metric " + metric);
  return sum / count;
}

double MetricsReport::mean_at(const std::string& metric, int t) const {
  double sum = 0.0;
  int count = 0;
  for (const StepRecord& r : records) {
    if (r.t == t && r.metric == metric) {
      sum += r.value;
      ++count;
    }
  }
  if (count == 0) {
    throw std::out_of_range("no records for metric " + metric + " at t=" +
                            std::to_string(t));
  }
  return sum / count;
}

nlohmann::json MetricsReport::summary() const {
  std::vector<std::string> names;
  for (const StepRecord& r : records) {
    if (std::find(names.begin(), names.end(), r.metric) == names.end()) {
      names.push_back(r.metric);
    }
  }
  nlohmann::json agg;
  for (const std::string& name : names) {
    double sum = 0.0, sq = 0.0;
    int count = 0;
    for (const StepRecord& r : records) {
      if (r.metric == name) {
        sum += r.value;
        sq += r.value * r.value;
        ++count;
      }
    }
    const double mean = sum / count;
    const double var = count > 1 ? (sq - count * mean * mean) / (count - 1) : 0.0;
    agg[name] = {{"mean", mean}, {"std", std::sqrt(std::max(var, 0.0))},
                 {"count", count}};
  }
  nlohmann::json j;
  j["config"] = config;
  j["aggregates"] = agg;
  j["wall_seconds"] = wall_seconds;
  return j;
}

ExperimentConfig experiment_preset(ExperimentTag tag) {
  ExperimentConfig cfg;
  cfg.tag = tag;
  cfg.runs = 10;
  auto block2 = [](double in, double out) {
    BlockMatrix w(2, 2);
    w << in, out, out, in;
    return w;
  };
  switch (tag) {
    case ExperimentTag::A:
      cfg.gen.n = 100;
      cfg.gen.k = 4;
      cfg.gen.T = 10;
      cfg.eps = 0.2;
      break;
    case ExperimentTag::B: {
      cfg.gen.n = 100;
      cfg.gen.k = 4;
      cfg.gen.T = 10;
      cfg.gen.dynamics.model = Model::TypeII;
      cfg.gen.dynamics.xi = 0.0;
      BlockMatrix base = BlockMatrix::Constant(4, 4, 0.1);
      base.diagonal().setConstant(0.9);
      cfg.gen.dynamics.W.clear();
      for (int t = 0; t < cfg.gen.T; ++t) {
        cfg.gen.dynamics.W.push_back(
            t % 2 == 0 ? base
                       : (BlockMatrix::Ones(4, 4) - base).eval());
      }
      break;
    }
    case ExperimentTag::C:
      cfg.gen.n = 500;
      cfg.gen.k = 2;
      cfg.gen.T = 8;
      cfg.gen.community_model = CommunityModel::Changing;
      cfg.gen.minority_fraction = 0.1;
      cfg.gen.first_change_step = 5;
      cfg.gen.dynamics.model = Model::TypeII;
      cfg.gen.dynamics.xi = 0.2;
      cfg.gen.dynamics.W.assign(1, block2(0.5, 0.2));
      break;
    case ExperimentTag::D: {
      cfg.gen.n = 500;
      cfg.gen.k = 2;
      cfg.gen.T = 20;
      cfg.gen.dynamics.model = Model::TypeI;
      cfg.gen.dynamics.W.assign(1, block2(0.3, 0.2));
      cfg.gen.dynamics.mu = block2(0.6, 0.4);
      cfg.fit_model = Model::TypeI;
      cfg.unify = UnifyStrategy::CM;
      cfg.eval_ts = {2, 5, 10, 15, 20};
      break;
    }
    case ExperimentTag::E:
      cfg.gen.n = 500;
      cfg.gen.k = 2;
      cfg.gen.T = 10;
      cfg.gen.dynamics.model = Model::TypeI;
      cfg.gen.dynamics.W.assign(1, block2(0.3, 0.2));  // replaced per run
      cfg.gen.dynamics.mu = block2(0.6, 0.4);
      cfg.fit_model = Model::TypeI;
      cfg.unify = UnifyStrategy::CM;
      cfg.eval_ts = {5, 10};
      break;
    case ExperimentTag::G:
      cfg.runs = 1;
      cfg.window = 4;
      cfg.gen.k = 2;
      cfg.fit_model = Model::TypeI;
      cfg.unify = UnifyStrategy::CM;
      break;
    case ExperimentTag::Custom:
      cfg.gen.n = 100;
      cfg.gen.k = 2;
      cfg.gen.T = 10;
      cfg.gen.dynamics.model = Model::TypeII;
      cfg.gen.dynamics.xi = 0.5;
      cfg.gen.dynamics.W.assign(1, block2(0.3, 0.2));
      break;
  }
  return cfg;
}

MetricsReport run_experiment(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  MetricsReport rep;
  rep.config = config_echo(cfg);

  if (cfg.tag == ExperimentTag::G) {
    run_g(cfg, rep);
  } else {
    std::vector<MetricsReport> per_run(cfg.runs);
#pragma omp parallel for schedule(dynamic)
    for (int run = 0; run < cfg.runs; ++run) {
      switch (cfg.tag) {
        case ExperimentTag::A:
          run_a(cfg, run, per_run[run]);
          break;
        case ExperimentTag::B:
          run_b(cfg, run, per_run[run]);
          break;
        case ExperimentTag::C:
          run_c(cfg, run, per_run[run]);
          break;
        case ExperimentTag::E:
          run_d_like(cfg, run, per_run[run], true);
          break;
        case ExperimentTag::D:
        case ExperimentTag::Custom:
        default:
          run_d_like(cfg, run, per_run[run], false);
          break;
      }
    }
    for (int run = 0; run < cfg.runs; ++run) {
      rep.records.insert(rep.records.end(), per_run[run].records.begin(),
                         per_run[run].records.end());
    }
  }

  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return rep;
}

void save_report(const MetricsReport& report, const std::string& out_base) {
  {
    std::ofstream csv(out_base + ".csv");
    if (!csv) throw std::runtime_error("cannot write " + out_base + ".csv");
    csv << "metric,run,t,value\n";
    for (const StepRecord& r : report.records) {
      csv << r.metric << ',' << r.run << ',' << r.t << ',' << r.value << '\n';
    }
  }
  std::ofstream js(out_base + ".json");
  if (!js) throw std::runtime_error("cannot write " + out_base + ".json");
  js << report.summary().dump(2) << '\n';
}

ExperimentTag parse_tag(const std::string& s) {
  if (s == "A" || s == "a") return ExperimentTag::A;
  if (s == "B" || s == "b") return ExperimentTag::B;
  if (s == "C" || s == "c") return ExperimentTag::C;
  if (s == "D" || s == "d") return ExperimentTag::D;
  if (s == "E" || s == "e") return ExperimentTag::E;
  if (s == "G" || s == "g") return ExperimentTag::G;
  if (s == "custom") return ExperimentTag::Custom;
  throw std::invalid_argument("unknown experiment tag: " + s);
}

}  // namespace dynsbm
