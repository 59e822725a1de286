#include "ttpred/models/logreg.hpp"

#include <algorithm>
#include <cmath>

namespace ttpred {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// log(1 + e^z) - t*z computed without overflow
double bce_with_logit(double z, double t) {
    return std::max(z, 0.0) - t * z + std::log1p(std::exp(-std::abs(z)));
}

double soft_threshold(double v, double lambda) {
    if (v > lambda) return v - lambda;
    if (v < -lambda) return v + lambda;
    return 0.0;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

double LogRegModel::score(const std::vector<double>& x) const {
    if (x.size() != weights_.size()) {
        throw DomainError("logreg score: dimension mismatch");
    }
    double z = bias_;
    for (std::size_t j = 0; j < x.size(); ++j) {
        z += weights_[j] * x[j];
    }
    return sigmoid(z);
}

double logreg_loss(const std::vector<double>& theta, const FeatureMatrix& x,
                   const LabelVector& y, double c, bool l2_penalty,
                   std::vector<double>* grad) {
    const std::size_t n = x.size();
    const std::size_t d = theta.size() - 1;
    const double b = theta[d];
    if (grad) {
        grad->assign(d + 1, 0.0);
    }
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double z = b;
        for (std::size_t j = 0; j < d; ++j) {
            z += theta[j] * x[i][j];
        }
        const double t = (y[i] + 1) * 0.5;
        loss += bce_with_logit(z, t);
        if (grad) {
            const double resid = sigmoid(z) - t;
            for (std::size_t j = 0; j < d; ++j) {
                (*grad)[j] += resid * x[i][j];
            }
            (*grad)[d] += resid;
        }
    }
    loss /= static_cast<double>(n);
    if (grad) {
        for (double& g : *grad) {
            g /= static_cast<double>(n);
        }
    }
    if (l2_penalty) {
        for (std::size_t j = 0; j < d; ++j) {
            loss += 0.5 * theta[j] * theta[j] / c;
            if (grad) {
                (*grad)[j] += theta[j] / c;
            }
        }
    }
    return loss;
}

std::unique_ptr<LogRegModel> logreg_fit(const FeatureMatrix& x, const LabelVector& y,
                                        const LogRegParams& params, std::uint64_t seed) {
    check_training_inputs(x, y);
    if (params.c <= 0.0) {
        throw DomainError("logreg_fit: c must be positive");
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

    const std::size_t d = xs.front().size();
    const bool l2 = params.penalty == Penalty::L2;
    std::vector<double> theta(d + 1, 0.0);
    std::vector<double> grad;
    double loss = logreg_loss(theta, xs, ys, params.c, l2, &grad);
    double step = 1.0;

    for (int iter = 0; iter < params.max_iter; ++iter) {
        if (l2 && norm2(grad) <= params.tol) {
            break;
        }
        std::vector<double> next(d + 1);
        // backtracking line search on the smooth part; proximal shrink
        // handles the L1 term so exact zeros stay reachable
        while (true) {
            if (l2) {
                for (std::size_t j = 0; j <= d; ++j) {
                    next[j] = theta[j] - step * grad[j];
                }
            } else {
                for (std::size_t j = 0; j < d; ++j) {
                    next[j] = soft_threshold(theta[j] - step * grad[j], step / params.c);
                }
                next[d] = theta[d] - step * grad[d];
            }
            const double next_loss = logreg_loss(next, xs, ys, params.c, l2, nullptr);
            double penalty_next = 0.0, penalty_cur = 0.0;
            if (!l2) {
                for (std::size_t j = 0; j < d; ++j) {
                    penalty_next += std::abs(next[j]) / params.c;
                    penalty_cur += std::abs(theta[j]) / params.c;
                }
            }
            if (next_loss + penalty_next <= loss + penalty_cur || step < 1e-14) {
                break;
            }
            step *= 0.5;
        }

        // optimality residual for L1: proximal-step displacement
        double prox_resid = 0.0;
        if (!l2) {
            for (std::size_t j = 0; j <= d; ++j) {
                const double diff = (theta[j] - next[j]) / step;
                prox_resid += diff * diff;
            }
            prox_resid = std::sqrt(prox_resid);
        }
        theta = std::move(next);
        if (!l2 && prox_resid <= params.tol) {
            break;
        }
        loss = logreg_loss(theta, xs, ys, params.c, l2, &grad);
        step = std::min(step * 2.0, 1e6);
    }

    std::vector<double> w(theta.begin(), theta.begin() + d);
    return std::make_unique<LogRegModel>(params, std::move(w), theta[d], seed);
}

}  // namespace ttpred
