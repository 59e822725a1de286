#pragma once

#include <cstdint>

#include "ttpred/models/classifier.hpp"

namespace ttpred {

class LogRegModel final : public Classifier {
public:
    LogRegModel(LogRegParams params, std::vector<double> weights, double bias,
                std::uint64_t seed)
        : params_(params), weights_(std::move(weights)), bias_(bias), seed_(seed) {}

    ModelFamily family() const override { return ModelFamily::LogReg; }
    std::size_t input_dim() const override { return weights_.size(); }
    double score(const std::vector<double>& x) const override;  // sigmoid(w.x + b)
    double decision_threshold() const override { return 0.5; }

    const std::vector<double>& weights() const { return weights_; }
    double bias() const { return bias_; }
    const LogRegParams& params() const { return params_; }
    std::uint64_t seed() const { return seed_; }

private:
    LogRegParams params_;
    std::vector<double> weights_;
    double bias_ = 0.0;
    std::uint64_t seed_ = 0;
};

// Mean binary cross-entropy on targets (y+1)/2 plus the L2 penalty
// (1/c) * 0.5*||w||^2 when requested; bias is never penalized. theta packs
// [w_0..w_{d-1}, b]. grad may be null when only the value is needed.
// The L1 penalty is handled by the proximal step inside logreg_fit and is
// not part of this smooth objective.
double logreg_loss(const std::vector<double>& theta, const FeatureMatrix& x,
                   const LabelVector& y, double c, bool l2_penalty,
                   std::vector<double>* grad);

std::unique_ptr<LogRegModel> logreg_fit(const FeatureMatrix& x, const LabelVector& y,
                                        const LogRegParams& params, std::uint64_t seed);

}  // namespace ttpred
