#include "ttpred/models/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ttpred {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double bce_with_logit(double z, double t) {
    return std::max(z, 0.0) - t * z + std::log1p(std::exp(-std::abs(z)));
}

// forward pass through all layers; activations[l] is the output of layer l
// (activations[0] is the input), preacts[l] the pre-activation of layer l+1
void forward(const std::vector<double>& theta, const std::vector<int>& sizes,
             const std::vector<double>& input, std::vector<std::vector<double>>& activations,
             std::vector<std::vector<double>>& preacts) {
    const std::size_t layers = sizes.size() - 1;
    activations.assign(layers + 1, {});
    preacts.assign(layers, {});
    activations[0] = input;
    std::size_t offset = 0;
    for (std::size_t l = 0; l < layers; ++l) {
        const int in = sizes[l];
        const int out = sizes[l + 1];
        const double* w = theta.data() + offset;
        const double* b = theta.data() + offset + static_cast<std::size_t>(in) * out;
        preacts[l].assign(out, 0.0);
        for (int o = 0; o < out; ++o) {
            double z = b[o];
            const double* row = w + static_cast<std::size_t>(o) * in;
            for (int i = 0; i < in; ++i) {
                z += row[i] * activations[l][i];
            }
            preacts[l][o] = z;
        }
        activations[l + 1].assign(out, 0.0);
        const bool last = l + 1 == layers;
        for (int o = 0; o < out; ++o) {
            activations[l + 1][o] = last ? preacts[l][o] : std::max(preacts[l][o], 0.0);
        }
        offset += static_cast<std::size_t>(in) * out + out;
    }
}

}  // namespace

std::size_t mlp_theta_size(const std::vector<int>& layer_sizes) {
    std::size_t total = 0;
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        total += static_cast<std::size_t>(layer_sizes[l]) * layer_sizes[l + 1] +
                 layer_sizes[l + 1];
    }
    return total;
}

double MlpModel::score(const std::vector<double>& x) const {
    if (x.size() != input_dim()) {
        throw DomainError("mlp score: dimension mismatch");
    }
    std::vector<std::vector<double>> acts, pre;
    forward(theta_, layer_sizes_, x, acts, pre);
    return sigmoid(acts.back()[0]);
}

double mlp_loss(const std::vector<double>& theta, const std::vector<int>& layer_sizes,
                const FeatureMatrix& x, const LabelVector& y, std::vector<double>* grad) {
    const std::size_t n = x.size();
    const std::size_t layers = layer_sizes.size() - 1;
    if (grad) {
        grad->assign(theta.size(), 0.0);
    }
    double loss = 0.0;
    std::vector<std::vector<double>> acts, pre;
    std::vector<std::vector<double>> delta(layers);

    for (std::size_t s = 0; s < n; ++s) {
        forward(theta, layer_sizes, x[s], acts, pre);
        const double z = acts.back()[0];
        const double t = (y[s] + 1) * 0.5;
        loss += bce_with_logit(z, t);
        if (!grad) {
            continue;
        }
        // output delta of BCE-with-logits is sigmoid(z) - t
        delta[layers - 1].assign(1, sigmoid(z) - t);
        for (std::size_t l = layers - 1; l-- > 0;) {
            const int out = layer_sizes[l + 1];
            const int next_out = layer_sizes[l + 2];
            std::size_t next_offset = 0;
            for (std::size_t k = 0; k <= l; ++k) {
                next_offset += static_cast<std::size_t>(layer_sizes[k]) * layer_sizes[k + 1] +
                               layer_sizes[k + 1];
            }
            const double* w_next = theta.data() + next_offset;
            delta[l].assign(out, 0.0);
            for (int o = 0; o < out; ++o) {
                if (pre[l][o] <= 0.0) {
                    continue;  // relu gate
                }
                double acc = 0.0;
                for (int k = 0; k < next_out; ++k) {
                    acc += w_next[static_cast<std::size_t>(k) * out + o] * delta[l + 1][k];
                }
                delta[l][o] = acc;
            }
        }
        std::size_t offset = 0;
        for (std::size_t l = 0; l < layers; ++l) {
            const int in = layer_sizes[l];
            const int out = layer_sizes[l + 1];
            double* gw = grad->data() + offset;
            double* gb = grad->data() + offset + static_cast<std::size_t>(in) * out;
            for (int o = 0; o < out; ++o) {
                const double dl = delta[l][o];
                double* row = gw + static_cast<std::size_t>(o) * in;
                for (int i = 0; i < in; ++i) {
                    row[i] += dl * acts[l][i];
                }
                gb[o] += dl;
            }
            offset += static_cast<std::size_t>(in) * out + out;
        }
    }
    loss /= static_cast<double>(n);
    if (grad) {
        for (double& g : *grad) {
            g /= static_cast<double>(n);
        }
    }
    return loss;
}

std::vector<double> mlp_init_theta(const std::vector<int>& layer_sizes, std::uint64_t seed) {
    std::vector<double> theta(mlp_theta_size(layer_sizes), 0.0);
    std::mt19937_64 rng(seed);
    std::size_t offset = 0;
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        const int in = layer_sizes[l];
        const int out = layer_sizes[l + 1];
        const double bound = std::sqrt(6.0 / (in + out));
        std::uniform_real_distribution<double> dist(-bound, bound);
        for (int k = 0; k < in * out; ++k) {
            theta[offset + k] = dist(rng);
        }
        offset += static_cast<std::size_t>(in) * out + out;  // biases stay zero
    }
    return theta;
}

std::unique_ptr<MlpModel> mlp_fit(const FeatureMatrix& x, const LabelVector& y,
                                  const MlpParams& params, std::uint64_t seed) {
    check_training_inputs(x, y);
    if (params.hidden_layer_sizes.empty()) {
        throw DomainError("mlp_fit: at least one hidden layer required");
    }
    for (int h : params.hidden_layer_sizes) {
        if (h < 1) {
            throw DomainError("mlp_fit: hidden layer sizes must be positive");
        }
    }
    if (params.learning_rate <= 0.0 || params.max_iter < 1 || params.tol <= 0.0) {
        throw DomainError("mlp_fit: invalid training parameters");
    }

    const std::vector<std::size_t> order = canonical_row_order(x, y);
    FeatureMatrix xs;
    LabelVector ys;
    xs.reserve(x.size());
    ys.reserve(y.size());
    for (std::size_t i : order) {
        xs.push_back(x[i]);
        ys.push_back(y[i]);
    }

    std::vector<int> sizes;
    sizes.push_back(static_cast<int>(xs.front().size()));
    for (int h : params.hidden_layer_sizes) {
        sizes.push_back(h);
    }
    sizes.push_back(1);

    std::vector<double> theta = mlp_init_theta(sizes, seed);
    std::vector<double> grad;
    double prev_loss = mlp_loss(theta, sizes, xs, ys, &grad);

    for (int epoch = 0; epoch < params.max_iter; ++epoch) {
        for (std::size_t j = 0; j < theta.size(); ++j) {
            theta[j] -= params.learning_rate * grad[j];
        }
        const double loss = mlp_loss(theta, sizes, xs, ys, &grad);
        if (std::abs(prev_loss - loss) < params.tol) {
            prev_loss = loss;
            break;
        }
        prev_loss = loss;
    }

    return std::make_unique<MlpModel>(params, std::move(sizes), std::move(theta), seed);
}

}  // namespace ttpred
