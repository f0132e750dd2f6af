#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "whs/io.hpp"
#include "whs/weights.hpp"

namespace whs::exp {

struct WeightSpec {
  std::string id = "constant";
  ParamMap params;

  WeightSequence build() const { return make_weight(id, params); }
};

/// Everything an experiment run depends on. Unset ranges fall back to the
/// experiment's defaults; thresholds default to the shipped pass criteria.
struct ExperimentConfig {
  std::string experiment;
  WeightSpec weight;
  unsigned k_min = 0, k_max = 0;
  std::size_t n_min = 0, n_max = 0;
  std::vector<std::size_t> n_list;
  std::size_t truncation = 0;
  std::size_t quad_nodes = 0;
  std::size_t trials = 0;
  double a = 0.6;
  double p = 1.0;
  double s = 1.0;
  double alpha = 1.0;
  std::map<std::string, double> thresholds;
  std::filesystem::path output_dir;
  std::uint64_t seed = 20240601;

  double threshold(const std::string& name) const;
};

/// Merge a JSON document over `base`; unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base);
nlohmann::json config_to_json(const ExperimentConfig& c);

struct Scalar {
  std::string name;
  double value = 0.0;
  std::string formula;
};

struct Check {
  std::string name;
  bool passed = false;
  double observed = 0.0;
  double threshold = 0.0;
  std::string formula;
};

struct ExperimentRecord {
  std::string id;
  nlohmann::json inputs;
  std::vector<Scalar> scalars;
  std::vector<Check> checks;
  io::Table table;
  double wall_clock_s = 0.0;

  bool passed() const;
  void scalar(std::string name, double value, std::string formula);
  void check(std::string name, bool passed, double observed, double threshold, std::string formula);
  /// Record without the wall clock, for reproducibility comparisons.
  nlohmann::json to_json(bool with_timing = true) const;
};

struct ExperimentInfo {
  std::string id;
  std::string claim;                  // the quantitative statement reproduced
  std::vector<std::string> formulas;  // formula ids the experiment exercises
  std::function<ExperimentConfig()> defaults;
  std::function<ExperimentRecord(const ExperimentConfig&)> run;
};

const std::vector<ExperimentInfo>& registry();
const ExperimentInfo& find_experiment(const std::string& id);

/// Every formula id the experiments must jointly cover.
const std::vector<std::string>& in_scope_formulas();

/// Run one experiment; when the config has an output dir, writes
/// <dir>/<id>.csv and <dir>/<id>.json.
ExperimentRecord run_experiment(const ExperimentConfig& cfg);

// Individual drivers.
ExperimentRecord exp_zorboska_ratio(const ExperimentConfig& cfg);
ExperimentRecord exp_sigma_fk(const ExperimentConfig& cfg);
ExperimentRecord exp_nlogn_bound(const ExperimentConfig& cfg);
ExperimentRecord exp_lp_growth(const ExperimentConfig& cfg);
ExperimentRecord exp_osc_lower(const ExperimentConfig& cfg);
ExperimentRecord exp_hinf_embedding(const ExperimentConfig& cfg);
ExperimentRecord exp_hankel(const ExperimentConfig& cfg);
ExperimentRecord exp_bn_criteria(const ExperimentConfig& cfg);
ExperimentRecord exp_moment(const ExperimentConfig& cfg);
ExperimentRecord exp_hs_identity(const ExperimentConfig& cfg);
ExperimentRecord exp_inner_parseval(const ExperimentConfig& cfg);
ExperimentRecord exp_weight_regularity(const ExperimentConfig& cfg);

}  // namespace whs::exp
