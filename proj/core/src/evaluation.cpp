#include "ttpred/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ttpred/rng.hpp"

namespace ttpred {

ConfusionMatrix confusion_matrix(const std::vector<int>& y_true,
                                 const std::vector<int>& y_pred) {
    if (y_true.size() != y_pred.size()) {
        throw DomainError("confusion_matrix: length mismatch");
    }
    if (y_true.empty()) {
        throw DomainError("confusion_matrix: empty input");
    }
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if (y_true[i] > 0) {
            (y_pred[i] > 0 ? cm.tp : cm.fn) += 1;
        } else {
            (y_pred[i] > 0 ? cm.fp : cm.tn) += 1;
        }
    }
    return cm;
}

Metrics compute_metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) {
        throw DomainError("compute_metrics: empty confusion matrix");
    }
    Metrics m;
    m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
    m.precision = cm.tp + cm.fp > 0 ? static_cast<double>(cm.tp) / (cm.tp + cm.fp) : 0.0;
    m.recall = cm.tp + cm.fn > 0 ? static_cast<double>(cm.tp) / (cm.tp + cm.fn) : 0.0;
    m.f1 = m.precision + m.recall > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    return m;
}

RocCurve roc_auc(const std::vector<int>& y_true, const std::vector<double>& scores) {
    if (y_true.size() != scores.size() || y_true.empty()) {
        throw DomainError("roc_auc: bad input lengths");
    }
    long n_pos = 0, n_neg = 0;
    for (int y : y_true) {
        (y > 0 ? n_pos : n_neg) += 1;
    }
    if (n_pos == 0 || n_neg == 0) {
        throw DomainError("roc_auc: both classes must be present");
    }

    std::vector<std::size_t> order(y_true.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve curve;
    curve.points.push_back({0.0, 0.0});
    long tp = 0, fp = 0;
    double auc = 0.0;
    double prev_fpr = 0.0, prev_tpr = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        // consume one tie group per sweep step
        const double s = scores[order[i]];
        while (i < order.size() && scores[order[i]] == s) {
            (y_true[order[i]] > 0 ? tp : fp) += 1;
            ++i;
        }
        const double fpr = static_cast<double>(fp) / n_neg;
        const double tpr = static_cast<double>(tp) / n_pos;
        auc += (fpr - prev_fpr) * (tpr + prev_tpr) * 0.5;
        curve.points.push_back({fpr, tpr});
        prev_fpr = fpr;
        prev_tpr = tpr;
    }
    curve.auc = auc;
    return curve;
}

std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> kfold_split(
    const std::vector<std::size_t>& indices, int k, std::uint64_t seed) {
    if (k < 2) {
        throw DomainError("kfold_split: k must be at least 2");
    }
    if (indices.size() < static_cast<std::size_t>(k)) {
        throw DomainError("kfold_split: fewer items than folds");
    }
    std::vector<std::size_t> shuffled = indices;
    std::mt19937_64 rng = make_rng(seed);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);

    const std::size_t n = shuffled.size();
    const std::size_t base = n / k;
    const std::size_t extra = n % k;

    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> folds;
    folds.reserve(k);
    std::size_t start = 0;
    for (int f = 0; f < k; ++f) {
        const std::size_t size = base + (static_cast<std::size_t>(f) < extra ? 1 : 0);
        std::vector<std::size_t> val(shuffled.begin() + start, shuffled.begin() + start + size);
        std::vector<std::size_t> train;
        train.reserve(n - size);
        train.insert(train.end(), shuffled.begin(), shuffled.begin() + start);
        train.insert(train.end(), shuffled.begin() + start + size, shuffled.end());
        folds.emplace_back(std::move(train), std::move(val));
        start += size;
    }
    return folds;
}

namespace {

// match ids in first-appearance order, with each group's sample indices
struct MatchGroups {
    std::vector<std::vector<std::size_t>> groups;
};

MatchGroups group_by_match(const std::vector<LabeledSample>& samples) {
    MatchGroups mg;
    std::map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        auto it = seen.find(samples[i].match_id);
        if (it == seen.end()) {
            seen.emplace(samples[i].match_id, mg.groups.size());
            mg.groups.push_back({i});
        } else {
            mg.groups[it->second].push_back(i);
        }
    }
    return mg;
}

std::vector<std::size_t> expand_groups(const MatchGroups& mg,
                                       const std::vector<std::size_t>& group_ids) {
    std::vector<std::size_t> out;
    for (std::size_t g : group_ids) {
        out.insert(out.end(), mg.groups[g].begin(), mg.groups[g].end());
    }
    return out;
}

}  // namespace

ProtocolSplit split_protocol(const std::vector<LabeledSample>& samples, int k,
                             std::uint64_t seed) {
    const MatchGroups mg = group_by_match(samples);
    const std::size_t n_matches = mg.groups.size();
    if (n_matches < 10) {
        throw DomainError("split_protocol: need at least 10 matches");
    }

    std::vector<std::size_t> group_ids(n_matches);
    std::iota(group_ids.begin(), group_ids.end(), std::size_t{0});
    std::mt19937_64 rng = make_rng(seed);
    std::shuffle(group_ids.begin(), group_ids.end(), rng);

    const std::size_t n_test = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(0.10 * static_cast<double>(n_matches))));

    std::vector<std::size_t> test_groups(group_ids.begin(), group_ids.begin() + n_test);
    std::vector<std::size_t> pool_groups(group_ids.begin() + n_test, group_ids.end());

    ProtocolSplit split;
    split.test_idx = expand_groups(mg, test_groups);
    split.pool_idx = expand_groups(mg, pool_groups);
    for (auto& [train_groups, val_groups] : kfold_split(pool_groups, k, derive_seed(seed, 1))) {
        split.folds.emplace_back(expand_groups(mg, train_groups),
                                 expand_groups(mg, val_groups));
    }
    return split;
}

SplitPlan train_val_test_split(const std::vector<LabeledSample>& samples, std::uint64_t seed,
                               int k) {
    const ProtocolSplit split = split_protocol(samples, k, seed);
    SplitPlan plan;
    plan.test_idx = split.test_idx;
    plan.train_idx = split.folds.front().first;
    plan.val_idx = split.folds.front().second;
    plan.seed = seed;
    return plan;
}

namespace {

struct FoldData {
    FeatureMatrix x_train, x_val;
    LabelVector y_train, y_val;
};

FoldData extract_fold(const std::vector<LabeledSample>& samples,
                      const std::vector<std::size_t>& train_idx,
                      const std::vector<std::size_t>& val_idx) {
    FoldData fd;
    for (std::size_t i : train_idx) {
        fd.x_train.push_back(samples[i].features);
        fd.y_train.push_back(samples[i].label);
    }
    for (std::size_t i : val_idx) {
        fd.x_val.push_back(samples[i].features);
        fd.y_val.push_back(samples[i].label);
    }
    return fd;
}

bool single_class(const LabelVector& y) {
    return std::all_of(y.begin(), y.end(), [&](int v) { return v == y.front(); });
}

}  // namespace

CvResult cross_validate(const ModelSpec& spec, const std::vector<LabeledSample>& samples,
                        int k, std::uint64_t seed) {
    const MatchGroups mg = group_by_match(samples);
    std::vector<std::size_t> group_ids(mg.groups.size());
    std::iota(group_ids.begin(), group_ids.end(), std::size_t{0});

    CvResult result;
    const auto folds = kfold_split(group_ids, k, seed);
    for (std::size_t f = 0; f < folds.size(); ++f) {
        const auto train_idx = expand_groups(mg, folds[f].first);
        const auto val_idx = expand_groups(mg, folds[f].second);
        FoldData fd = extract_fold(samples, train_idx, val_idx);
        if (fd.y_train.empty() || fd.y_val.empty() || single_class(fd.y_train)) {
            result.warnings.push_back("fold " + std::to_string(f) +
                                      " skipped: single-class training labels");
            ++result.folds_skipped;
            continue;
        }
        const Standardizer scaler = standardize_fit(fd.x_train);
        const auto model = fit_model(spec, standardize_apply(scaler, fd.x_train), fd.y_train,
                                     derive_seed(seed, f));
        LabelVector preds;
        preds.reserve(fd.y_val.size());
        for (const auto& row : fd.x_val) {
            preds.push_back(model->predict_label(standardize_apply(scaler, row)));
        }
        result.per_fold.push_back(compute_metrics(confusion_matrix(fd.y_val, preds)));
    }

    if (result.per_fold.empty()) {
        throw DegenerateFitError("cross_validate: every fold was degenerate");
    }

    const double kk = static_cast<double>(result.per_fold.size());
    auto accumulate = [&](auto member) {
        double mean = 0.0;
        for (const Metrics& m : result.per_fold) {
            mean += m.*member;
        }
        mean /= kk;
        double var = 0.0;
        for (const Metrics& m : result.per_fold) {
            var += (m.*member - mean) * (m.*member - mean);
        }
        var /= kk;  // population variance over fold scores
        return std::pair<double, double>(mean, std::sqrt(var) / std::sqrt(kk));
    };
    std::tie(result.mean.accuracy, result.standard_error.accuracy) =
        accumulate(&Metrics::accuracy);
    std::tie(result.mean.precision, result.standard_error.precision) =
        accumulate(&Metrics::precision);
    std::tie(result.mean.recall, result.standard_error.recall) = accumulate(&Metrics::recall);
    std::tie(result.mean.f1, result.standard_error.f1) = accumulate(&Metrics::f1);
    return result;
}

ModelSpec with_param(ModelSpec spec, const std::string& name, const nlohmann::json& value) {
    auto as_double = [&]() { return value.get<double>(); };
    auto as_int = [&]() { return value.get<int>(); };
    try {
        switch (spec.family) {
            case ModelFamily::LogReg: {
                auto& p = std::get<LogRegParams>(spec.params);
                if (name == "penalty") {
                    const std::string s = value.get<std::string>();
                    if (s != "l1" && s != "l2") {
                        throw DomainError("penalty must be l1 or l2");
                    }
                    p.penalty = s == "l1" ? Penalty::L1 : Penalty::L2;
                } else if (name == "c") {
                    p.c = as_double();
                } else if (name == "max_iter") {
                    p.max_iter = as_int();
                } else if (name == "tol") {
                    p.tol = as_double();
                } else {
                    throw DomainError("unknown logreg parameter: " + name);
                }
                break;
            }
            case ModelFamily::RandomForest: {
                auto& p = std::get<ForestParams>(spec.params);
                if (name == "n_trees") {
                    p.n_trees = as_int();
                } else if (name == "max_depth") {
                    p.max_depth = as_int();
                } else if (name == "max_features") {
                    p.max_features = as_int();
                } else if (name == "min_samples_leaf") {
                    p.min_samples_leaf = as_int();
                } else {
                    throw DomainError("unknown forest parameter: " + name);
                }
                break;
            }
            case ModelFamily::Svm: {
                auto& p = std::get<SvmParams>(spec.params);
                if (name == "kernel") {
                    p.kernel = kernel_from_name(value.get<std::string>());
                } else if (name == "c") {
                    p.c = as_double();
                } else if (name == "gamma") {
                    p.gamma = as_double();
                } else if (name == "degree") {
                    p.degree = as_int();
                } else if (name == "coef0") {
                    p.coef0 = as_double();
                } else if (name == "tol") {
                    p.tol = as_double();
                } else {
                    throw DomainError("unknown svm parameter: " + name);
                }
                break;
            }
            case ModelFamily::Mlp: {
                auto& p = std::get<MlpParams>(spec.params);
                if (name == "hidden_layer_sizes" || name == "hidden") {
                    p.hidden_layer_sizes = value.get<std::vector<int>>();
                } else if (name == "max_iter") {
                    p.max_iter = as_int();
                } else if (name == "learning_rate") {
                    p.learning_rate = as_double();
                } else if (name == "tol") {
                    p.tol = as_double();
                } else if (name == "activation") {
                    if (value.get<std::string>() != "relu") {
                        throw DomainError("only relu activation is supported");
                    }
                } else {
                    throw DomainError("unknown mlp parameter: " + name);
                }
                break;
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("bad value for parameter " + name + ": " + e.what());
    }
    return spec;
}

ModelSpec spec_with_params(ModelSpec spec, const nlohmann::json& params) {
    if (params.is_null()) {
        return spec;
    }
    if (!params.is_object()) {
        throw DomainError("model params must be a JSON object");
    }
    for (const auto& [name, value] : params.items()) {
        spec = with_param(std::move(spec), name, value);
    }
    return spec;
}

std::vector<GridSearchEntry> grid_search(const ModelSpec& base, const ParamGrid& grid,
                                         const std::vector<LabeledSample>& samples, int k,
                                         std::uint64_t seed, std::size_t cap) {
    if (grid.empty()) {
        throw DomainError("grid_search: empty grid");
    }
    std::size_t product = 1;
    for (const auto& [name, values] : grid) {
        if (values.empty()) {
            throw DomainError("grid_search: empty value list for " + name);
        }
        product *= values.size();
        if (product > cap) {
            throw DomainError("grid_search: product size exceeds cap of " +
                              std::to_string(cap));
        }
    }

    // odometer over names in sorted (map) order; last name varies fastest
    std::vector<const std::string*> names;
    std::vector<const std::vector<nlohmann::json>*> value_lists;
    for (const auto& [name, values] : grid) {
        names.push_back(&name);
        value_lists.push_back(&values);
    }

    std::vector<GridSearchEntry> entries;
    entries.reserve(product);
    std::vector<std::size_t> cursor(names.size(), 0);
    while (true) {
        GridSearchEntry entry;
        entry.spec = base;
        entry.params = nlohmann::json::object();
        for (std::size_t i = 0; i < names.size(); ++i) {
            const nlohmann::json& v = (*value_lists[i])[cursor[i]];
            entry.spec = with_param(std::move(entry.spec), *names[i], v);
            entry.params[*names[i]] = v;
        }
        entry.cv = cross_validate(entry.spec, samples, k, seed);
        entries.push_back(std::move(entry));

        bool wrapped = false;
        std::size_t pos = names.size();
        while (true) {
            if (pos == 0) {
                wrapped = true;
                break;
            }
            --pos;
            if (++cursor[pos] < value_lists[pos]->size()) {
                break;
            }
            cursor[pos] = 0;
        }
        if (wrapped) {
            break;
        }
    }

    std::stable_sort(entries.begin(), entries.end(),
                     [](const GridSearchEntry& a, const GridSearchEntry& b) {
                         if (a.cv.mean.accuracy != b.cv.mean.accuracy) {
                             return a.cv.mean.accuracy > b.cv.mean.accuracy;
                         }
                         return a.cv.mean.f1 > b.cv.mean.f1;
                     });
    return entries;
}

}  // namespace ttpred
