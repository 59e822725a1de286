#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "ttpred/errors.hpp"

namespace ttpred {

using FeatureMatrix = std::vector<std::vector<double>>;
using LabelVector = std::vector<int>;  // entries in {-1, +1}

enum class ModelFamily { LogReg, RandomForest, Svm, Mlp };

std::string family_name(ModelFamily f);
ModelFamily family_from_name(const std::string& name);

enum class Penalty { L1, L2 };

struct LogRegParams {
    Penalty penalty = Penalty::L2;
    double c = 1.0;  // inverse regularization strength
    int max_iter = 500;
    double tol = 1e-6;
};

struct ForestParams {
    int n_trees = 200;
    int max_depth = 80;
    int max_features = 4;
    int min_samples_leaf = 4;
};

enum class Kernel { Linear, Rbf, Polynomial, Sigmoid };

std::string kernel_name(Kernel k);
Kernel kernel_from_name(const std::string& name);

struct SvmParams {
    Kernel kernel = Kernel::Linear;
    double c = 1.0;
    double gamma = 0.0;  // <= 0 selects 1/d at fit time
    int degree = 3;
    double coef0 = 0.0;
    double tol = 5e-4;  // KKT violation stopping threshold
    long max_iter = 2000000;
};

enum class Activation { Relu };

struct MlpParams {
    std::vector<int> hidden_layer_sizes = {2};
    Activation activation = Activation::Relu;
    int max_iter = 200;
    double learning_rate = 0.3;
    double tol = 1e-6;
};

// Fitted binary classifier. score() is monotone in the model's confidence
// for the +1 class and is the quantity fed to ROC; the decision threshold is
// 0.5 for probability-scored families and 0 for the SVM margin. A score
// exactly at the threshold resolves to -1.
class Classifier {
public:
    virtual ~Classifier() = default;
    virtual ModelFamily family() const = 0;
    virtual std::size_t input_dim() const = 0;
    virtual double score(const std::vector<double>& x) const = 0;
    virtual double decision_threshold() const = 0;

    int predict_label(const std::vector<double>& x) const {
        return score(x) > decision_threshold() ? +1 : -1;
    }
};

struct Prediction {
    double score = 0.0;
    int label = -1;
};

Prediction predict(const Classifier& c, const std::vector<double>& x);

using ModelParams = std::variant<LogRegParams, ForestParams, SvmParams, MlpParams>;

struct ModelSpec {
    std::string name;  // row label in reports
    ModelFamily family = ModelFamily::LogReg;
    ModelParams params = LogRegParams{};
};

// The default hyperparameter presets shipped with the toolkit, one spec per
// report row: logreg, random_forest, svm_{linear,rbf,polynomial,sigmoid}, mlp.
std::vector<ModelSpec> default_model_specs();
ModelSpec preset_spec(ModelFamily family);

std::unique_ptr<Classifier> fit_model(const ModelSpec& spec, const FeatureMatrix& x,
                                      const LabelVector& y, std::uint64_t seed);

// Rejects empty/ragged/non-finite inputs and single-class label vectors.
void check_training_inputs(const FeatureMatrix& x, const LabelVector& y);

// Canonical row order (lexicographic by features, then label). Fits sort
// their training rows this way so a permutation of the input rows cannot
// change the fitted model.
std::vector<std::size_t> canonical_row_order(const FeatureMatrix& x, const LabelVector& y);

}  // namespace ttpred
