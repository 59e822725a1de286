#pragma once

#include <cstdint>

#include "ttpred/models/classifier.hpp"

namespace ttpred {

// Kernel value for one pair of vectors.
//   Linear:     u.v
//   Rbf:        exp(-gamma*||u-v||^2)
//   Polynomial: (gamma*u.v + coef0)^degree
//   Sigmoid:    tanh(gamma*u.v + coef0)
double kernel_eval(const SvmParams& params, const std::vector<double>& u,
                   const std::vector<double>& v);

class SvmModel final : public Classifier {
public:
    SvmModel(SvmParams params, FeatureMatrix support_vectors, std::vector<double> coefficients,
             double bias, double kkt_violation, std::size_t dim, std::uint64_t seed)
        : params_(params),
          support_vectors_(std::move(support_vectors)),
          coefficients_(std::move(coefficients)),
          bias_(bias),
          kkt_violation_(kkt_violation),
          dim_(dim),
          seed_(seed) {}

    ModelFamily family() const override { return ModelFamily::Svm; }
    std::size_t input_dim() const override { return dim_; }
    // margin score: sum_i coef_i * k(sv_i, x) + bias
    double score(const std::vector<double>& x) const override;
    double decision_threshold() const override { return 0.0; }

    const FeatureMatrix& support_vectors() const { return support_vectors_; }
    // alpha_i * y_i per support vector
    const std::vector<double>& coefficients() const { return coefficients_; }
    double bias() const { return bias_; }
    double kkt_violation() const { return kkt_violation_; }
    const SvmParams& params() const { return params_; }  // gamma resolved to 1/d
    std::uint64_t seed() const { return seed_; }

private:
    SvmParams params_;
    FeatureMatrix support_vectors_;
    std::vector<double> coefficients_;
    double bias_ = 0.0;
    double kkt_violation_ = 0.0;
    std::size_t dim_ = 0;
    std::uint64_t seed_ = 0;
};

// Diagnostic view of a solved dual, exposed for optimality checks.
struct SvmDual {
    std::vector<double> alphas;  // box-constrained multipliers, one per row
    std::vector<int> labels;     // labels in the solver's canonical row order
    double bias = 0.0;
    double kkt_violation = 0.0;
    double objective = 0.0;  // dual objective sum(alpha) - 0.5*a'Qa
};

std::unique_ptr<SvmModel> svm_fit(const FeatureMatrix& x, const LabelVector& y,
                                  const SvmParams& params, std::uint64_t seed,
                                  SvmDual* dual_out = nullptr);

}  // namespace ttpred
