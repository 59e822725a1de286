#pragma once

#include <cstdint>

#include "ttpred/models/classifier.hpp"

namespace ttpred {

// Fully connected relu network with a sigmoid output unit. Parameters are
// kept as one flat vector laid out per layer: weights (out x in, row-major)
// then biases.
class MlpModel final : public Classifier {
public:
    MlpModel(MlpParams params, std::vector<int> layer_sizes, std::vector<double> theta,
             std::uint64_t seed)
        : params_(std::move(params)),
          layer_sizes_(std::move(layer_sizes)),
          theta_(std::move(theta)),
          seed_(seed) {}

    ModelFamily family() const override { return ModelFamily::Mlp; }
    std::size_t input_dim() const override { return layer_sizes_.front(); }
    double score(const std::vector<double>& x) const override;  // sigmoid output
    double decision_threshold() const override { return 0.5; }

    const std::vector<int>& layer_sizes() const { return layer_sizes_; }  // [d, h..., 1]
    const std::vector<double>& theta() const { return theta_; }
    const MlpParams& params() const { return params_; }
    std::uint64_t seed() const { return seed_; }

private:
    MlpParams params_;
    std::vector<int> layer_sizes_;
    std::vector<double> theta_;
    std::uint64_t seed_ = 0;
};

std::size_t mlp_theta_size(const std::vector<int>& layer_sizes);

// Mean binary cross-entropy of the network on targets (y+1)/2; fills the
// analytic gradient via backpropagation when grad is non-null.
double mlp_loss(const std::vector<double>& theta, const std::vector<int>& layer_sizes,
                const FeatureMatrix& x, const LabelVector& y, std::vector<double>* grad);

// Glorot-uniform initial parameters drawn from a generator seeded with
// `seed`; biases start at zero.
std::vector<double> mlp_init_theta(const std::vector<int>& layer_sizes, std::uint64_t seed);

std::unique_ptr<MlpModel> mlp_fit(const FeatureMatrix& x, const LabelVector& y,
                                  const MlpParams& params, std::uint64_t seed);

}  // namespace ttpred
