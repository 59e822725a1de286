#include "ttpred/models/random_forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace ttpred {

double gini_impurity(long n_neg, long n_pos) {
    const long n = n_neg + n_pos;
    if (n == 0) {
        return 0.0;
    }
    const double p_neg = static_cast<double>(n_neg) / n;
    const double p_pos = static_cast<double>(n_pos) / n;
    return 1.0 - p_neg * p_neg - p_pos * p_pos;
}

int DecisionTree::vote(const std::vector<double>& x) const {
    int node = 0;
    while (!nodes[node].is_leaf()) {
        node = x[nodes[node].feature] <= nodes[node].threshold ? nodes[node].left
                                                               : nodes[node].right;
    }
    return nodes[node].n_pos > nodes[node].n_neg ? +1 : -1;
}

double RandomForestModel::score(const std::vector<double>& x) const {
    if (x.size() != dim_) {
        throw DomainError("forest score: dimension mismatch");
    }
    long pos_votes = 0;
    for (const DecisionTree& t : trees_) {
        if (t.vote(x) > 0) {
            ++pos_votes;
        }
    }
    return static_cast<double>(pos_votes) / static_cast<double>(trees_.size());
}

namespace {

struct SplitChoice {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double decrease = 0.0;  // parent gini minus weighted child gini
};

struct TreeBuilder {
    const FeatureMatrix& x;
    const LabelVector& y;
    const ForestParams& params;
    std::mt19937_64& rng;
    std::size_t n_root;
    DecisionTree tree;
    std::vector<double>& importance_sum;  // accumulated weighted decreases

    // indices carry bootstrap multiplicity
    int build(std::vector<std::size_t>& indices, int depth) {
        long n_pos = 0;
        for (std::size_t i : indices) {
            if (y[i] > 0) ++n_pos;
        }
        const long n = static_cast<long>(indices.size());
        const long n_neg = n - n_pos;

        const int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(TreeNode{});
        tree.nodes[node_id].n_neg = n_neg;
        tree.nodes[node_id].n_pos = n_pos;

        const double node_gini = gini_impurity(n_neg, n_pos);
        if (node_gini == 0.0 || depth >= params.max_depth ||
            n < 2 * params.min_samples_leaf) {
            return node_id;
        }

        SplitChoice split = best_split(indices, n_neg, n_pos, node_gini);
        if (!split.found) {
            return node_id;
        }

        importance_sum[split.feature] +=
            (static_cast<double>(n) / static_cast<double>(n_root)) * split.decrease;

        std::vector<std::size_t> left_idx, right_idx;
        left_idx.reserve(indices.size());
        right_idx.reserve(indices.size());
        for (std::size_t i : indices) {
            (x[i][split.feature] <= split.threshold ? left_idx : right_idx).push_back(i);
        }
        indices.clear();
        indices.shrink_to_fit();

        tree.nodes[node_id].feature = split.feature;
        tree.nodes[node_id].threshold = split.threshold;
        const int left = build(left_idx, depth + 1);
        tree.nodes[node_id].left = left;
        const int right = build(right_idx, depth + 1);
        tree.nodes[node_id].right = right;
        return node_id;
    }

    SplitChoice best_split(const std::vector<std::size_t>& indices, long n_neg, long n_pos,
                           double node_gini) {
        const std::size_t d = x.front().size();
        const std::size_t mf = std::min<std::size_t>(params.max_features, d);

        // partial Fisher-Yates, then sorted so candidate order is canonical
        std::vector<int> features(d);
        std::iota(features.begin(), features.end(), 0);
        for (std::size_t j = 0; j < mf; ++j) {
            std::uniform_int_distribution<std::size_t> pick(j, d - 1);
            std::swap(features[j], features[pick(rng)]);
        }
        features.resize(mf);
        std::sort(features.begin(), features.end());

        const long n = n_neg + n_pos;
        SplitChoice best;
        std::vector<std::pair<double, int>> vals;
        vals.reserve(indices.size());
        for (int f : features) {
            vals.clear();
            for (std::size_t i : indices) {
                vals.emplace_back(x[i][f], y[i]);
            }
            std::sort(vals.begin(), vals.end());
            long left_pos = 0, left_n = 0;
            for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
                ++left_n;
                if (vals[k].second > 0) ++left_pos;
                if (vals[k].first == vals[k + 1].first) {
                    continue;
                }
                const long right_n = n - left_n;
                if (left_n < params.min_samples_leaf || right_n < params.min_samples_leaf) {
                    continue;
                }
                const long left_neg = left_n - left_pos;
                const long right_pos = n_pos - left_pos;
                const long right_neg = n_neg - left_neg;
                const double weighted =
                    (left_n * gini_impurity(left_neg, left_pos) +
                     right_n * gini_impurity(right_neg, right_pos)) /
                    static_cast<double>(n);
                const double decrease = node_gini - weighted;
                if (decrease > best.decrease + 1e-12) {
                    best.found = true;
                    best.feature = f;
                    best.threshold = vals[k].first + 0.5 * (vals[k + 1].first - vals[k].first);
                    best.decrease = decrease;
                }
            }
        }
        return best;
    }
};

}  // namespace

std::unique_ptr<RandomForestModel> rf_fit(const FeatureMatrix& x, const LabelVector& y,
                                          const ForestParams& params, std::uint64_t seed) {
    check_training_inputs(x, y);
    const std::size_t d = x.front().size();
    if (params.n_trees < 1 || params.max_depth < 1 || params.min_samples_leaf < 1) {
        throw DomainError("rf_fit: tree parameters must be positive");
    }
    if (params.max_features < 1 || static_cast<std::size_t>(params.max_features) > d) {
        throw DomainError("rf_fit: max_features must be in [1, feature dimension]");
    }

    // bootstrap draws index into the canonically ordered rows, so fits are
    // invariant to any permutation of the input rows
    const std::vector<std::size_t> order = canonical_row_order(x, y);
    FeatureMatrix xs;
    LabelVector ys;
    xs.reserve(x.size());
    ys.reserve(y.size());
    for (std::size_t i : order) {
        xs.push_back(x[i]);
        ys.push_back(y[i]);
    }

    const std::size_t n = xs.size();
    std::vector<DecisionTree> trees;
    trees.reserve(params.n_trees);
    std::vector<double> importance_mean(d, 0.0);

    for (int t = 0; t < params.n_trees; ++t) {
        // per-tree stream: seed xor tree index, so any build schedule agrees
        std::mt19937_64 rng(seed ^ static_cast<std::uint64_t>(t));
        std::vector<std::size_t> sample(n);
        std::uniform_int_distribution<std::size_t> draw(0, n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            sample[i] = draw(rng);
        }
        std::vector<double> tree_importance(d, 0.0);
        TreeBuilder builder{xs, ys, params, rng, n, DecisionTree{}, tree_importance};
        builder.build(sample, 0);
        trees.push_back(std::move(builder.tree));
        for (std::size_t j = 0; j < d; ++j) {
            importance_mean[j] += tree_importance[j];
        }
    }

    for (double& v : importance_mean) {
        v /= static_cast<double>(params.n_trees);
    }
    const double total = std::accumulate(importance_mean.begin(), importance_mean.end(), 0.0);
    if (total > 0.0) {
        for (double& v : importance_mean) {
            v /= total;
        }
    } else {
        // forest never split; report the uninformative uniform vector
        std::fill(importance_mean.begin(), importance_mean.end(), 1.0 / static_cast<double>(d));
    }

    return std::make_unique<RandomForestModel>(params, std::move(trees),
                                               std::move(importance_mean), d, seed);
}

std::vector<double> rf_feature_importances(const Classifier& c) {
    const auto* forest = dynamic_cast<const RandomForestModel*>(&c);
    if (!forest) {
        throw DomainError("rf_feature_importances: classifier is not a random forest");
    }
    return forest->feature_importances();
}

}  // namespace ttpred
