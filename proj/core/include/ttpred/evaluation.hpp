#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ttpred/features.hpp"
#include "ttpred/models/classifier.hpp"

namespace ttpred {

struct ConfusionMatrix {
    long tp = 0;
    long tn = 0;
    long fp = 0;
    long fn = 0;

    long total() const { return tp + tn + fp + fn; }
};

struct Metrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// +1 is the positive class.
ConfusionMatrix confusion_matrix(const std::vector<int>& y_true, const std::vector<int>& y_pred);

// Undefined ratios (zero denominators) come out as 0.
Metrics compute_metrics(const ConfusionMatrix& cm);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

struct RocCurve {
    std::vector<RocPoint> points;  // swept over descending score thresholds
    double auc = 0.0;              // trapezoidal; ties get half credit
};

RocCurve roc_auc(const std::vector<int>& y_true, const std::vector<double>& scores);

// One train/validation/test view of the dataset under the 72:18:10 protocol
// (validation is the first cross-validation fold). Indices are sample
// indices; both perspectives of a match always land in the same part.
struct SplitPlan {
    std::vector<std::size_t> train_idx;
    std::vector<std::size_t> val_idx;
    std::vector<std::size_t> test_idx;
    std::uint64_t seed = 0;
};

SplitPlan train_val_test_split(const std::vector<LabeledSample>& samples, std::uint64_t seed,
                               int k = 5);

// Seeded shuffle, then k folds whose sizes differ by at most one.
// Element i of the result is (train, validation) for iteration i.
std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> kfold_split(
    const std::vector<std::size_t>& indices, int k, std::uint64_t seed);

// Full protocol split: 10% of matches (rounded to nearest, at least one) to
// the test set, the rest to the cross-validation pool with its k folds.
struct ProtocolSplit {
    std::vector<std::size_t> test_idx;
    std::vector<std::size_t> pool_idx;
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> folds;
};

ProtocolSplit split_protocol(const std::vector<LabeledSample>& samples, int k,
                             std::uint64_t seed);

struct CvResult {
    std::vector<Metrics> per_fold;    // completed folds only
    Metrics mean;                     // arithmetic mean over completed folds
    Metrics standard_error;           // sigma/sqrt(k) per metric
    std::vector<std::string> warnings;
    int folds_skipped = 0;
};

// Per fold: standardizer fitted on the training part only, model fitted on
// the standardized training part, metrics computed on the validation part.
// Folds whose training labels collapse to a single class are skipped with a
// warning; all folds degenerate is an error.
CvResult cross_validate(const ModelSpec& spec, const std::vector<LabeledSample>& samples,
                        int k, std::uint64_t seed);

// Named hyperparameter override for grid search and config files.
ModelSpec with_param(ModelSpec spec, const std::string& name, const nlohmann::json& value);
ModelSpec spec_with_params(ModelSpec spec, const nlohmann::json& params);

using ParamGrid = std::map<std::string, std::vector<nlohmann::json>>;

struct GridSearchEntry {
    nlohmann::json params;  // name -> chosen value
    ModelSpec spec;
    CvResult cv;
};

// Evaluates every combination in the Cartesian product with cross_validate
// and ranks by mean validation accuracy, ties by mean F1, then by the
// canonical enumeration order (names sorted, values in given order).
std::vector<GridSearchEntry> grid_search(const ModelSpec& base, const ParamGrid& grid,
                                         const std::vector<LabeledSample>& samples, int k,
                                         std::uint64_t seed, std::size_t cap = 4096);

}  // namespace ttpred
