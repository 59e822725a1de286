#pragma once

#include <cstdint>

#include "ttpred/models/classifier.hpp"

namespace ttpred {

// Flat node storage; leaves keep their class counts so serialized trees can
// be rebuilt bit-exactly.
struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    long n_neg = 0;
    long n_pos = 0;

    bool is_leaf() const { return feature < 0; }
};

struct DecisionTree {
    std::vector<TreeNode> nodes;  // node 0 is the root

    // +1 iff the reached leaf has strictly more positive than negative
    // training samples.
    int vote(const std::vector<double>& x) const;
};

class RandomForestModel final : public Classifier {
public:
    RandomForestModel(ForestParams params, std::vector<DecisionTree> trees,
                      std::vector<double> importances, std::size_t dim, std::uint64_t seed)
        : params_(params),
          trees_(std::move(trees)),
          importances_(std::move(importances)),
          dim_(dim),
          seed_(seed) {}

    ModelFamily family() const override { return ModelFamily::RandomForest; }
    std::size_t input_dim() const override { return dim_; }
    double score(const std::vector<double>& x) const override;  // fraction of +1 votes
    double decision_threshold() const override { return 0.5; }

    const std::vector<DecisionTree>& trees() const { return trees_; }
    const ForestParams& params() const { return params_; }
    std::uint64_t seed() const { return seed_; }
    // Mean decrease in Gini impurity per feature, normalized to sum to 1.
    const std::vector<double>& feature_importances() const { return importances_; }

private:
    ForestParams params_;
    std::vector<DecisionTree> trees_;
    std::vector<double> importances_;
    std::size_t dim_ = 0;
    std::uint64_t seed_ = 0;
};

std::unique_ptr<RandomForestModel> rf_fit(const FeatureMatrix& x, const LabelVector& y,
                                          const ForestParams& params, std::uint64_t seed);

// Importances of a fitted forest; throws DomainError for other families.
std::vector<double> rf_feature_importances(const Classifier& c);

double gini_impurity(long n_neg, long n_pos);

}  // namespace ttpred
