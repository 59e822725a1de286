#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ttpred/evaluation.hpp"
#include "ttpred/features.hpp"
#include "ttpred/synth.hpp"

namespace ttpred {

struct ExperimentModel {
    ModelSpec spec;
    std::optional<ParamGrid> grid;  // when set, grid search picks the params
};

struct ExperimentConfig {
    std::optional<std::string> input_path;  // exactly one of input_path / synth
    std::optional<SynthConfig> synth;
    std::vector<ExperimentModel> models;  // empty -> default preset list
    int k = 5;
    std::uint64_t seed = 0;
    FeatureMode feature_mode = FeatureMode::PerMatch;
    FeatureSet feature_set = FeatureSet::Full;
    FeatureConfig features;
    std::string out_dir;  // empty -> no files written
};

struct ModelReport {
    std::string name;
    nlohmann::json chosen_params;  // grid-search winner, null without a grid
    CvResult cv;
    Metrics test;
    ConfusionMatrix test_cm;
    RocCurve test_roc;
    std::vector<double> importances;  // forest only
};

struct ExperimentReport {
    std::vector<ModelReport> models;
    std::vector<std::string> drop_log;
    std::size_t n_matches = 0;
    std::size_t n_samples = 0;
    std::size_t n_test_samples = 0;
    std::uint64_t fold_fingerprint = 0;  // hash of the per-fold match id lists
};

// split -> (optional grid search) -> cross-validation -> final fit on the
// full pool -> test evaluation, then the report CSVs when out_dir is set:
// results.csv, confusion.csv, roc.csv, importances.csv, drops.log.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

struct AblationReport {
    ExperimentReport with_derived;
    ExperimentReport without_derived;
};

// Two paired runs (full feature set vs. base-only) on identical folds;
// writes ablation.csv.
AblationReport run_ablation(const ExperimentConfig& cfg);

// Aggregate leave-one-out features; writes prematch.csv.
ExperimentReport run_prematch(const ExperimentConfig& cfg);

// Config file layer. The JSON mirrors ExperimentConfig; CLI flags override
// file values which override defaults.
SynthConfig synth_config_from_json(const nlohmann::json& j);
nlohmann::json synth_config_to_json(const SynthConfig& cfg);
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::string& path);

std::vector<MatchRecord> load_experiment_matches(const ExperimentConfig& cfg,
                                                 std::vector<std::string>* drop_log);

}  // namespace ttpred
