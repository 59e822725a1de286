#include "ttpred/models/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ttpred/models/logreg.hpp"
#include "ttpred/models/mlp.hpp"
#include "ttpred/models/random_forest.hpp"
#include "ttpred/models/svm.hpp"

namespace ttpred {

using nlohmann::json;

namespace {

json tree_node_to_json(const DecisionTree& tree, int node_id) {
    const TreeNode& node = tree.nodes[node_id];
    json j;
    if (node.is_leaf()) {
        j["leaf_counts"] = {node.n_neg, node.n_pos};
    } else {
        j["feature"] = node.feature;
        j["threshold"] = node.threshold;
        j["left"] = tree_node_to_json(tree, node.left);
        j["right"] = tree_node_to_json(tree, node.right);
    }
    return j;
}

int tree_node_from_json(const json& j, DecisionTree& tree) {
    const int node_id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(TreeNode{});
    if (j.contains("leaf_counts")) {
        tree.nodes[node_id].n_neg = j["leaf_counts"][0].get<long>();
        tree.nodes[node_id].n_pos = j["leaf_counts"][1].get<long>();
        return node_id;
    }
    tree.nodes[node_id].feature = j.at("feature").get<int>();
    tree.nodes[node_id].threshold = j.at("threshold").get<double>();
    const int left = tree_node_from_json(j.at("left"), tree);
    tree.nodes[node_id].left = left;
    const int right = tree_node_from_json(j.at("right"), tree);
    tree.nodes[node_id].right = right;
    return node_id;
}

json standardizer_to_json(const Standardizer& s) {
    return json{{"means", s.means}, {"stds", s.stds}};
}

Standardizer standardizer_from_json(const json& j) {
    Standardizer s;
    s.means = j.at("means").get<std::vector<double>>();
    s.stds = j.at("stds").get<std::vector<double>>();
    return s;
}

}  // namespace

std::string model_to_json(const Classifier& c, const std::optional<Standardizer>& standardizer) {
    json doc;
    doc["family"] = family_name(c.family());
    json hp, params;

    switch (c.family()) {
        case ModelFamily::LogReg: {
            const auto& m = dynamic_cast<const LogRegModel&>(c);
            hp["penalty"] = m.params().penalty == Penalty::L1 ? "l1" : "l2";
            hp["c"] = m.params().c;
            hp["max_iter"] = m.params().max_iter;
            hp["tol"] = m.params().tol;
            params["weights"] = m.weights();
            params["bias"] = m.bias();
            doc["seed"] = m.seed();
            break;
        }
        case ModelFamily::RandomForest: {
            const auto& m = dynamic_cast<const RandomForestModel&>(c);
            hp["n_trees"] = m.params().n_trees;
            hp["max_depth"] = m.params().max_depth;
            hp["max_features"] = m.params().max_features;
            hp["min_samples_leaf"] = m.params().min_samples_leaf;
            json trees = json::array();
            for (const DecisionTree& t : m.trees()) {
                trees.push_back(tree_node_to_json(t, 0));
            }
            params["trees"] = std::move(trees);
            params["input_dim"] = m.input_dim();
            params["importances"] = m.feature_importances();
            doc["seed"] = m.seed();
            break;
        }
        case ModelFamily::Svm: {
            const auto& m = dynamic_cast<const SvmModel&>(c);
            hp["kernel"] = kernel_name(m.params().kernel);
            hp["c"] = m.params().c;
            hp["gamma"] = m.params().gamma;
            hp["degree"] = m.params().degree;
            hp["coef0"] = m.params().coef0;
            hp["tol"] = m.params().tol;
            params["support_vectors"] = m.support_vectors();
            params["coefficients"] = m.coefficients();
            params["bias"] = m.bias();
            params["kkt_violation"] = m.kkt_violation();
            params["input_dim"] = m.input_dim();
            doc["seed"] = m.seed();
            break;
        }
        case ModelFamily::Mlp: {
            const auto& m = dynamic_cast<const MlpModel&>(c);
            hp["hidden_layer_sizes"] = m.params().hidden_layer_sizes;
            hp["activation"] = "relu";
            hp["max_iter"] = m.params().max_iter;
            hp["learning_rate"] = m.params().learning_rate;
            hp["tol"] = m.params().tol;
            params["layer_sizes"] = m.layer_sizes();
            params["theta"] = m.theta();
            doc["seed"] = m.seed();
            break;
        }
    }

    doc["hyperparameters"] = std::move(hp);
    doc["parameters"] = std::move(params);
    if (standardizer) {
        doc["standardizer"] = standardizer_to_json(*standardizer);
    }
    return doc.dump(2);
}

SavedModel model_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid model JSON: ") + e.what());
    }
    SavedModel out;
    try {
        const ModelFamily family = family_from_name(doc.at("family").get<std::string>());
        const std::uint64_t seed = doc.value("seed", std::uint64_t{0});
        const json& hp = doc.at("hyperparameters");
        const json& params = doc.at("parameters");

        switch (family) {
            case ModelFamily::LogReg: {
                LogRegParams p;
                p.penalty = hp.value("penalty", "l2") == std::string("l1") ? Penalty::L1
                                                                           : Penalty::L2;
                p.c = hp.value("c", 1.0);
                p.max_iter = hp.value("max_iter", p.max_iter);
                p.tol = hp.value("tol", p.tol);
                out.classifier = std::make_unique<LogRegModel>(
                    p, params.at("weights").get<std::vector<double>>(),
                    params.at("bias").get<double>(), seed);
                break;
            }
            case ModelFamily::RandomForest: {
                ForestParams p;
                p.n_trees = hp.value("n_trees", p.n_trees);
                p.max_depth = hp.value("max_depth", p.max_depth);
                p.max_features = hp.value("max_features", p.max_features);
                p.min_samples_leaf = hp.value("min_samples_leaf", p.min_samples_leaf);
                std::vector<DecisionTree> trees;
                for (const json& tj : params.at("trees")) {
                    DecisionTree t;
                    tree_node_from_json(tj, t);
                    trees.push_back(std::move(t));
                }
                out.classifier = std::make_unique<RandomForestModel>(
                    p, std::move(trees),
                    params.at("importances").get<std::vector<double>>(),
                    params.at("input_dim").get<std::size_t>(), seed);
                break;
            }
            case ModelFamily::Svm: {
                SvmParams p;
                p.kernel = kernel_from_name(hp.at("kernel").get<std::string>());
                p.c = hp.value("c", 1.0);
                p.gamma = hp.value("gamma", 1.0);
                p.degree = hp.value("degree", 3);
                p.coef0 = hp.value("coef0", 0.0);
                p.tol = hp.value("tol", p.tol);
                out.classifier = std::make_unique<SvmModel>(
                    p, params.at("support_vectors").get<FeatureMatrix>(),
                    params.at("coefficients").get<std::vector<double>>(),
                    params.at("bias").get<double>(),
                    params.value("kkt_violation", 0.0),
                    params.at("input_dim").get<std::size_t>(), seed);
                break;
            }
            case ModelFamily::Mlp: {
                MlpParams p;
                p.hidden_layer_sizes =
                    hp.value("hidden_layer_sizes", std::vector<int>{2});
                p.max_iter = hp.value("max_iter", p.max_iter);
                p.learning_rate = hp.value("learning_rate", p.learning_rate);
                p.tol = hp.value("tol", p.tol);
                out.classifier = std::make_unique<MlpModel>(
                    p, params.at("layer_sizes").get<std::vector<int>>(),
                    params.at("theta").get<std::vector<double>>(), seed);
                break;
            }
        }
        if (doc.contains("standardizer")) {
            out.standardizer = standardizer_from_json(doc["standardizer"]);
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("model document malformed: ") + e.what());
    }
    return out;
}

void save_model_file(const std::string& path, const Classifier& c,
                     const std::optional<Standardizer>& standardizer) {
    std::ofstream out(path);
    if (!out) {
        throw DomainError("cannot open model file for writing: " + path);
    }
    out << model_to_json(c, standardizer) << '\n';
}

SavedModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open model file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json(buf.str());
}

}  // namespace ttpred
