// Command line front end: generate / recover / unify / estimate / predict /
// eval / experiment. Errors are reported as JSON on stderr with a nonzero
// exit code.

#include <omp.h>

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <string>

#include "dynsbm/changing.hpp"
#include "dynsbm/estimate.hpp"
#include "dynsbm/experiment.hpp"
#include "dynsbm/generator.hpp"
#include "dynsbm/io.hpp"
#include "dynsbm/metrics.hpp"
#include "dynsbm/predict.hpp"
#include "dynsbm/recover.hpp"
#include "dynsbm/unify.hpp"

namespace {

using dynsbm::BlockMatrix;

BlockMatrix block_from(double in, double out, int k) {
  BlockMatrix w = BlockMatrix::Constant(k, k, out);
  w.diagonal().setConstant(in);
  return w;
}

nlohmann::json block_to_json(const BlockMatrix& w) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < w.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int s = 0; s < w.cols(); ++s) row.push_back(w(r, s));
    rows.push_back(row);
  }
  return rows;
}

dynsbm::Model parse_model(const std::string& s) {
  if (s == "type1") return dynsbm::Model::TypeI;
  if (s == "type2") return dynsbm::Model::TypeII;
  if (s == "general") return dynsbm::Model::General;
  throw CLI::ValidationError("--model", "expected type1, type2 or general");
}

dynsbm::UnifyStrategy parse_unify(const std::string& s) {
  if (s == "cm") return dynsbm::UnifyStrategy::CM;
  if (s == "lp") return dynsbm::UnifyStrategy::LP;
  if (s == "threshold") return dynsbm::UnifyStrategy::Threshold;
  if (s == "mean") return dynsbm::UnifyStrategy::SpectralMean;
  throw CLI::ValidationError("--method", "expected cm, lp, threshold or mean");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Markovian graph-sequence models with latent block structure"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int runs = 10;
  int threads = 0;
  std::string out = "out";
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--runs", runs, "Monte Carlo runs")->capture_default_str();
  app.add_option("--out", out, "output path base")->capture_default_str();
  app.add_option("--threads", threads, "OpenMP threads (0 = default)");

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "sample a synthetic sequence");
  int n = 100, k = 2, T = 10;
  double w_in = 0.3, w_out = 0.2, mu_in = 0.6, mu_out = 0.4, xi = 0.5;
  double minority_fraction = 0.0;
  int first_change = 1;
  std::string model_name = "type2";
  std::string mode = "fixed";
  gen_cmd->add_option("--n", n)->capture_default_str();
  gen_cmd->add_option("--k", k)->capture_default_str();
  gen_cmd->add_option("--T", T)->capture_default_str();
  gen_cmd->add_option("--model", model_name, "type1|type2|general")
      ->capture_default_str();
  gen_cmd->add_option("--mode", mode, "fixed|changing")->capture_default_str();
  gen_cmd->add_option("--w-in", w_in)->capture_default_str();
  gen_cmd->add_option("--w-out", w_out)->capture_default_str();
  gen_cmd->add_option("--mu-in", mu_in)->capture_default_str();
  gen_cmd->add_option("--mu-out", mu_out)->capture_default_str();
  gen_cmd->add_option("--xi", xi)->capture_default_str();
  gen_cmd->add_option("--minority-fraction", minority_fraction)
      ->capture_default_str();
  gen_cmd->add_option("--change-start", first_change)->capture_default_str();

  // recover
  auto* rec_cmd = app.add_subcommand("recover", "per-snapshot communities");
  std::string data_path;
  int snap_t = -1;
  bool use_mean = false;
  rec_cmd->add_option("--data", data_path, "snapshot CSV")->required();
  rec_cmd->add_option("--k", k)->required();
  rec_cmd->add_option("--t", snap_t, "1-based snapshot (default: all)");
  rec_cmd->add_flag("--mean", use_mean, "cluster the time-averaged matrix");

  // unify
  auto* uni_cmd = app.add_subcommand("unify", "merge per-snapshot estimates");
  std::string method = "lp";
  double eps = 0.0;
  int threshold_c = 0;
  uni_cmd->add_option("--data", data_path, "snapshot CSV")->required();
  uni_cmd->add_option("--k", k)->required();
  uni_cmd->add_option("--method", method, "cm|lp|threshold|mean")
      ->capture_default_str();
  uni_cmd->add_option("--eps", eps, "assumed per-node error rate");
  uni_cmd->add_option("--C", threshold_c, "count threshold (default T/2)");

  // estimate
  auto* est_cmd = app.add_subcommand("estimate", "fit dynamic parameters");
  std::string membership_path;
  double grid_step = 0.01;
  bool use_mle = false;
  est_cmd->add_option("--data", data_path, "snapshot CSV")->required();
  est_cmd->add_option("--k", k)->required();
  est_cmd->add_option("--model", model_name, "type1|type2|general")
      ->capture_default_str();
  est_cmd->add_option("--membership", membership_path,
                      "membership CSV (default: recover + unify)");
  est_cmd->add_option("--method", method, "unify method when recovering")
      ->capture_default_str();
  est_cmd->add_option("--grid-step", grid_step)->capture_default_str();
  est_cmd->add_flag("--mle", use_mle, "grid-refined MLE instead of moments");

  // predict
  auto* pred_cmd = app.add_subcommand("predict", "one-step link prediction");
  int window = 4;
  int target_t = -1;
  pred_cmd->add_option("--data", data_path, "snapshot CSV")->required();
  pred_cmd->add_option("--k", k)->required();
  pred_cmd->add_option("--model", model_name)->capture_default_str();
  pred_cmd->add_option("--window", window)->capture_default_str();
  pred_cmd->add_option("--t", target_t, "1-based snapshot to predict")
      ->required();

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "compare two memberships");
  std::string pred_path, truth_path;
  eval_cmd->add_option("--pred", pred_path)->required();
  eval_cmd->add_option("--truth", truth_path)->required();

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "run a named experiment");
  std::string tag = "A";
  exp_cmd->add_option("tag", tag, "A|B|C|D|E|G|custom")->required();
  exp_cmd->add_option("--data", data_path, "snapshot CSV (experiment G)");
  exp_cmd->add_option("--n", n, "override node count");
  exp_cmd->add_option("--k", k, "override community count");
  exp_cmd->add_option("--T", T, "override snapshot count");
  exp_cmd->add_option("--xi", xi, "override xi");
  exp_cmd->add_option("--window", window, "sliding window (G)");
  exp_cmd->add_option("--method", method, "unify method")->capture_default_str();
  bool override_n = false, override_kk = false, override_t = false,
       override_xi = false, override_method = false;

  try {
    app.parse(argc, argv);
    if (threads > 0) omp_set_num_threads(threads);
    override_n = exp_cmd->count("--n") > 0;
    override_kk = exp_cmd->count("--k") > 0;
    override_t = exp_cmd->count("--T") > 0;
    override_xi = exp_cmd->count("--xi") > 0;
    override_method = exp_cmd->count("--method") > 0;

    if (gen_cmd->parsed()) {
      dynsbm::GenConfig cfg;
      cfg.n = n;
      cfg.k = k;
      cfg.T = T;
      cfg.seed = seed;
      cfg.dynamics.model = parse_model(model_name);
      cfg.dynamics.W.assign(1, block_from(w_in, w_out, k));
      cfg.dynamics.mu = block_from(mu_in, mu_out, k);
      cfg.dynamics.xi = xi;
      if (cfg.dynamics.model == dynsbm::Model::General) {
        cfg.dynamics.f = block_from(mu_in * w_in, mu_out * w_out, k);
        cfg.dynamics.h = block_from(1.0 - mu_in, 1.0 - mu_out, k);
      }
      if (mode == "changing") {
        cfg.community_model = dynsbm::CommunityModel::Changing;
        cfg.minority_fraction = minority_fraction;
        cfg.first_change_step = first_change;
      }
      const dynsbm::GeneratedSequence data = dynsbm::gen_sequence(cfg);
      dynsbm::save_snapshots(data.seq, out + ".csv");
      dynsbm::save_membership(data.truth(), out + "_truth.csv");
      if (mode == "changing") {
        dynsbm::save_mask(data.mask, out + "_mask.csv");
        dynsbm::save_membership(data.memberships.back(), out + "_truth_T.csv");
      }
      std::cout << "wrote " << out << ".csv (n=" << cfg.n << ", T=" << cfg.T
                << ")\n";
    } else if (rec_cmd->parsed()) {
      const dynsbm::GraphSequence seq = dynsbm::load_snapshots(data_path);
      dynsbm::RecoverOpts opts;
      opts.seed = seed;
      if (use_mean) {
        dynsbm::save_membership(dynsbm::spectral_mean(seq, k, opts),
                                out + ".csv");
      } else if (snap_t > 0) {
        dynsbm::save_membership(
            dynsbm::cm_recover(seq.adj.at(snap_t - 1), k, opts), out + ".csv");
      } else {
        for (int t = 0; t < seq.T(); ++t) {
          opts.seed = seed + t;
          dynsbm::save_membership(
              dynsbm::cm_recover(seq.adj[t], k, opts),
              out + "_t" + std::to_string(t + 1) + ".csv");
        }
      }
      std::cout << "wrote memberships to " << out << "*.csv\n";
    } else if (uni_cmd->parsed()) {
      const dynsbm::GraphSequence seq = dynsbm::load_snapshots(data_path);
      dynsbm::RecoverOpts opts;
      std::vector<dynsbm::Membership> estimates(seq.T());
      for (int t = 0; t < seq.T(); ++t) {
        opts.seed = seed + t;
        estimates[t] = dynsbm::cm_recover(seq.adj[t], k, opts);
      }
      opts.seed = seed;
      dynsbm::Membership unified;
      const dynsbm::UnifyStrategy strategy = parse_unify(method);
      switch (strategy) {
        case dynsbm::UnifyStrategy::CM:
          unified = dynsbm::unify_cm(estimates, eps, opts);
          break;
        case dynsbm::UnifyStrategy::LP:
          unified = dynsbm::unify_lp(estimates);
          break;
        case dynsbm::UnifyStrategy::Threshold:
          unified = dynsbm::unify_threshold(
              estimates, threshold_c > 0 ? threshold_c : seq.T() / 2, opts);
          break;
        case dynsbm::UnifyStrategy::SpectralMean:
          unified = dynsbm::spectral_mean(seq, k, opts);
          break;
      }
      dynsbm::save_membership(unified, out + ".csv");
      std::cout << "wrote " << out << ".csv\n";
    } else if (est_cmd->parsed()) {
      const dynsbm::GraphSequence seq = dynsbm::load_snapshots(data_path);
      dynsbm::Membership g;
      if (!membership_path.empty()) {
        g = dynsbm::load_membership(membership_path);
        g.k = std::max(g.k, k);
      } else {
        dynsbm::RecoverOpts opts;
        std::vector<dynsbm::Membership> estimates(seq.T());
        for (int t = 0; t < seq.T(); ++t) {
          opts.seed = seed + t;
          estimates[t] = dynsbm::cm_recover(seq.adj[t], k, opts);
        }
        g = dynsbm::unify_lp(estimates);
      }
      const dynsbm::Model model = parse_model(model_name);
      nlohmann::json result;
      if (use_mle) {
        const dynsbm::DynamicsParams fit =
            dynsbm::fit_mle_general(seq, g, model);
        result["W"] = block_to_json(fit.W[0]);
        if (model == dynsbm::Model::TypeI) result["mu"] = block_to_json(fit.mu);
        if (model == dynsbm::Model::TypeII) result["xi"] = fit.xi;
        if (model == dynsbm::Model::General) {
          result["f"] = block_to_json(fit.f);
          result["h"] = block_to_json(fit.h);
        }
      } else if (model == dynsbm::Model::TypeI) {
        const dynsbm::FitType1Result fit =
            dynsbm::fit_type1(seq, g, grid_step);
        result["W"] = block_to_json(fit.W);
        result["mu"] = block_to_json(fit.mu);
      } else {
        const dynsbm::FitType2Result fit =
            dynsbm::fit_type2(seq, g, grid_step);
        result["W"] = block_to_json(fit.W);
        result["xi"] = fit.xi;
      }
      std::cout << result.dump(2) << '\n';
    } else if (pred_cmd->parsed()) {
      const dynsbm::GraphSequence seq = dynsbm::load_snapshots(data_path);
      if (target_t < window + 1 || target_t > seq.T()) {
        throw std::invalid_argument("predict: --t must be in [window+1, T]");
      }
      dynsbm::GraphSequence win;
      win.n = seq.n;
      win.adj.assign(seq.adj.begin() + (target_t - 1 - window),
                     seq.adj.begin() + (target_t - 1));
      dynsbm::RecoverOpts opts;
      std::vector<dynsbm::Membership> estimates(win.T());
      for (int t = 0; t < win.T(); ++t) {
        opts.seed = seed + t;
        estimates[t] = dynsbm::cm_recover(win.adj[t], k, opts);
      }
      const dynsbm::Membership g = dynsbm::unify_lp(estimates);
      const dynsbm::DynamicsParams fit =
          dynsbm::fit_mle_general(win, g, parse_model(model_name));
      const Eigen::MatrixXd scores =
          dynsbm::predict_links(win.adj.back(), g, fit);

      std::vector<double> pair_scores;
      std::vector<int> labels;
      for (int i = 0; i < seq.n; ++i) {
        for (int j = i + 1; j < seq.n; ++j) {
          pair_scores.push_back(scores(i, j));
          labels.push_back(seq.adj[target_t - 1](i, j));
        }
      }
      nlohmann::json result;
      result["t"] = target_t;
      result["auc"] = dynsbm::auc(pair_scores, labels);
      std::cout << result.dump(2) << '\n';
    } else if (eval_cmd->parsed()) {
      const dynsbm::Membership pred = dynsbm::load_membership(pred_path);
      const dynsbm::Membership truth = dynsbm::load_membership(truth_path);
      nlohmann::json result;
      result["nmi"] = dynsbm::nmi(pred, truth);
      if (pred.k == truth.k) {
        result["misclassification"] = dynsbm::misclassification(pred, truth);
      }
      std::cout << result.dump(2) << '\n';
    } else if (exp_cmd->parsed()) {
      dynsbm::ExperimentConfig cfg =
          dynsbm::experiment_preset(dynsbm::parse_tag(tag));
      cfg.seed = seed;
      if (app.count("--runs") > 0) cfg.runs = runs;
      if (!data_path.empty()) cfg.dataset_path = data_path;
      if (override_n) cfg.gen.n = n;
      if (override_kk) cfg.gen.k = k;
      if (override_t) cfg.gen.T = T;
      if (override_xi) cfg.gen.dynamics.xi = xi;
      if (override_method) cfg.unify = parse_unify(method);
      if (exp_cmd->count("--window") > 0) cfg.window = window;
      const dynsbm::MetricsReport report = dynsbm::run_experiment(cfg);
      dynsbm::save_report(report, out);
      std::cout << report.summary().dump(2) << '\n';
      std::cout << "wrote " << out << ".csv and " << out << ".json\n";
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    nlohmann::json err;
    err["error"] = e.what();
    err["command"] = argc > 1 ? argv[1] : "";
    std::cerr << err.dump() << '\n';
    return 1;
  }
  return 0;
}
