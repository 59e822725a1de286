#include "ttpred/models/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ttpred/models/logreg.hpp"
#include "ttpred/models/mlp.hpp"
#include "ttpred/models/random_forest.hpp"
#include "ttpred/models/svm.hpp"

namespace ttpred {

std::string family_name(ModelFamily f) {
    switch (f) {
        case ModelFamily::LogReg:
            return "logreg";
        case ModelFamily::RandomForest:
            return "random_forest";
        case ModelFamily::Svm:
            return "svm";
        case ModelFamily::Mlp:
            return "mlp";
    }
    throw DomainError("unknown model family");
}

ModelFamily family_from_name(const std::string& name) {
    if (name == "logreg") return ModelFamily::LogReg;
    if (name == "random_forest" || name == "forest") return ModelFamily::RandomForest;
    if (name == "svm") return ModelFamily::Svm;
    if (name == "mlp") return ModelFamily::Mlp;
    throw DomainError("unknown model family: " + name);
}

std::string kernel_name(Kernel k) {
    switch (k) {
        case Kernel::Linear:
            return "linear";
        case Kernel::Rbf:
            return "rbf";
        case Kernel::Polynomial:
            return "polynomial";
        case Kernel::Sigmoid:
            return "sigmoid";
    }
    throw DomainError("unknown kernel");
}

Kernel kernel_from_name(const std::string& name) {
    if (name == "linear") return Kernel::Linear;
    if (name == "rbf") return Kernel::Rbf;
    if (name == "polynomial" || name == "poly") return Kernel::Polynomial;
    if (name == "sigmoid") return Kernel::Sigmoid;
    throw DomainError("unknown kernel: " + name);
}

Prediction predict(const Classifier& c, const std::vector<double>& x) {
    const double s = c.score(x);
    return Prediction{s, s > c.decision_threshold() ? +1 : -1};
}

ModelSpec preset_spec(ModelFamily family) {
    ModelSpec spec;
    spec.family = family;
    spec.name = family_name(family);
    switch (family) {
        case ModelFamily::LogReg:
            spec.params = LogRegParams{};  // L2, c = 1.0
            break;
        case ModelFamily::RandomForest:
            spec.params = ForestParams{};  // 200 trees, depth 80, 4 features, 4 per leaf
            break;
        case ModelFamily::Svm: {
            SvmParams p;
            p.kernel = Kernel::Linear;
            p.c = 0.2;
            spec.params = p;
            spec.name = "svm_linear";
            break;
        }
        case ModelFamily::Mlp:
            spec.params = MlpParams{};  // one hidden layer of 2, 200 epochs
            break;
    }
    return spec;
}

std::vector<ModelSpec> default_model_specs() {
    std::vector<ModelSpec> specs;
    specs.push_back(preset_spec(ModelFamily::LogReg));
    specs.push_back(preset_spec(ModelFamily::RandomForest));
    for (Kernel k : {Kernel::Linear, Kernel::Rbf, Kernel::Polynomial, Kernel::Sigmoid}) {
        ModelSpec spec = preset_spec(ModelFamily::Svm);
        std::get<SvmParams>(spec.params).kernel = k;
        spec.name = "svm_" + kernel_name(k);
        specs.push_back(spec);
    }
    specs.push_back(preset_spec(ModelFamily::Mlp));
    return specs;
}

void check_training_inputs(const FeatureMatrix& x, const LabelVector& y) {
    if (x.size() != y.size()) {
        throw DomainError("training inputs: feature/label count mismatch");
    }
    if (x.size() < 2) {
        throw DomainError("training inputs: need at least two samples");
    }
    const std::size_t d = x.front().size();
    if (d == 0) {
        throw DomainError("training inputs: empty feature vectors");
    }
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].size() != d) {
            throw DomainError("training inputs: ragged feature matrix");
        }
        for (double v : x[i]) {
            if (!std::isfinite(v)) {
                throw DomainError("training inputs: non-finite feature value");
            }
        }
        if (y[i] == 1) {
            has_pos = true;
        } else if (y[i] == -1) {
            has_neg = true;
        } else {
            throw DomainError("training inputs: labels must be -1 or +1");
        }
    }
    if (!has_pos || !has_neg) {
        throw DegenerateFitError("training inputs: both classes must be present");
    }
}

std::vector<std::size_t> canonical_row_order(const FeatureMatrix& x, const LabelVector& y) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (x[a] != x[b]) {
            return std::lexicographical_compare(x[a].begin(), x[a].end(), x[b].begin(),
                                                x[b].end());
        }
        return y[a] < y[b];
    });
    return order;
}

std::unique_ptr<Classifier> fit_model(const ModelSpec& spec, const FeatureMatrix& x,
                                      const LabelVector& y, std::uint64_t seed) {
    switch (spec.family) {
        case ModelFamily::LogReg:
            return logreg_fit(x, y, std::get<LogRegParams>(spec.params), seed);
        case ModelFamily::RandomForest:
            return rf_fit(x, y, std::get<ForestParams>(spec.params), seed);
        case ModelFamily::Svm:
            return svm_fit(x, y, std::get<SvmParams>(spec.params), seed);
        case ModelFamily::Mlp:
            return mlp_fit(x, y, std::get<MlpParams>(spec.params), seed);
    }
    throw DomainError("fit_model: unknown family");
}

}  // namespace ttpred
