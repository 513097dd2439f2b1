#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynsbm/changing.hpp"
#include "dynsbm/generator.hpp"
#include "dynsbm/types.hpp"

namespace dynsbm {

enum class ExperimentTag { A, B, C, D, E, G, Custom };

enum class UnifyStrategy { CM, LP, Threshold, SpectralMean };

struct ExperimentConfig {
  ExperimentTag tag = ExperimentTag::Custom;
  GenConfig gen;
  std::string dataset_path;  // experiment G / custom on real data
  std::string mask_path;
  UnifyStrategy unify = UnifyStrategy::CM;
  Model fit_model = Model::TypeII;
  double eps = 0.0;          // Assumption-A noise level (experiment A)
  int runs = 10;
  std::uint64_t seed = 0;
  int window = 4;            // sliding window (experiment G)
  std::vector<int> eval_ts;  // prefix lengths to evaluate; empty = all
  double grid_step = 0.01;
  bool joint_type1_fit = false;
};

// One measurement in long format; t is -1 for per-run scalars.
struct StepRecord {
  std::string metric;
  int run = 0;
  int t = -1;
  double value = 0.0;
};

struct MetricsReport {
  std::vector<StepRecord> records;
  double wall_seconds = 0.0;
  nlohmann::json config;

  void add(const std::string& metric, int run, int t, double value) {
    records.push_back({metric, run, t, value});
  }
  double mean(const std::string& metric) const;
  double mean_at(const std::string& metric, int t) const;
  nlohmann::json summary() const;
};

// Preset configurations matching the synthetic protocols (node counts,
// block matrices, dynamics) at desk scale. Experiment G needs a dataset.
ExperimentConfig experiment_preset(ExperimentTag tag);

MetricsReport run_experiment(const ExperimentConfig& cfg);

// Writes <out_base>.csv (metric,run,t,value) and <out_base>.json
// (config echo, per-metric aggregates, wall time).
void save_report(const MetricsReport& report, const std::string& out_base);

ExperimentTag parse_tag(const std::string& s);

}  // namespace dynsbm
