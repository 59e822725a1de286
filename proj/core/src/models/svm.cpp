#include "ttpred/models/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ttpred {

double kernel_eval(const SvmParams& params, const std::vector<double>& u,
                   const std::vector<double>& v) {
    if (u.size() != v.size()) {
        throw DomainError("kernel_eval: dimension mismatch");
    }
    double dot = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        dot += u[j] * v[j];
    }
    switch (params.kernel) {
        case Kernel::Linear:
            return dot;
        case Kernel::Rbf: {
            double sq = 0.0;
            for (std::size_t j = 0; j < u.size(); ++j) {
                const double diff = u[j] - v[j];
                sq += diff * diff;
            }
            return std::exp(-params.gamma * sq);
        }
        case Kernel::Polynomial:
            return std::pow(params.gamma * dot + params.coef0, params.degree);
        case Kernel::Sigmoid:
            return std::tanh(params.gamma * dot + params.coef0);
    }
    throw DomainError("kernel_eval: unknown kernel");
}

double SvmModel::score(const std::vector<double>& x) const {
    if (x.size() != dim_) {
        throw DomainError("svm score: dimension mismatch");
    }
    double s = bias_;
    for (std::size_t i = 0; i < support_vectors_.size(); ++i) {
        s += coefficients_[i] * kernel_eval(params_, support_vectors_[i], x);
    }
    return s;
}

// Solves min 0.5*a'Qa - e'a with 0 <= a <= C and y'a = 0, Q_ij = y_i y_j K_ij,
// by repeatedly optimizing the maximal violating pair.
std::unique_ptr<SvmModel> svm_fit(const FeatureMatrix& x, const LabelVector& y,
                                  const SvmParams& in_params, std::uint64_t seed,
                                  SvmDual* dual_out) {
    check_training_inputs(x, y);
    SvmParams params = in_params;
    const std::size_t d = x.front().size();
    if (params.gamma <= 0.0) {
        params.gamma = 1.0 / static_cast<double>(d);
    }
    if (params.c <= 0.0 || params.degree < 1 || params.tol <= 0.0) {
        throw DomainError("svm_fit: invalid hyperparameters");
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

    const std::size_t n = xs.size();
    const double c = params.c;
    constexpr double tau = 1e-12;

    std::vector<double> kmat(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double k = kernel_eval(params, xs[i], xs[j]);
            kmat[i * n + j] = k;
            kmat[j * n + i] = k;
        }
    }
    auto q = [&](std::size_t i, std::size_t j) {
        return ys[i] * ys[j] * kmat[i * n + j];
    };

    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0);  // G = Q*alpha - e
    double violation = std::numeric_limits<double>::infinity();
    long iter = 0;

    while (true) {
        // maximal violating pair over I_up / I_low
        double m_up = -std::numeric_limits<double>::infinity();
        double m_low = std::numeric_limits<double>::infinity();
        std::size_t i_up = n, i_low = n;
        for (std::size_t t = 0; t < n; ++t) {
            const double v = -ys[t] * grad[t];
            const bool in_up = (ys[t] > 0 && alpha[t] < c) || (ys[t] < 0 && alpha[t] > 0);
            const bool in_low = (ys[t] < 0 && alpha[t] < c) || (ys[t] > 0 && alpha[t] > 0);
            if (in_up && v > m_up) {
                m_up = v;
                i_up = t;
            }
            if (in_low && v < m_low) {
                m_low = v;
                i_low = t;
            }
        }
        violation = m_up - m_low;
        if (violation <= params.tol || i_up == n || i_low == n) {
            break;
        }
        if (++iter > params.max_iter) {
            throw ConvergenceError("svm_fit: iteration cap reached with KKT violation " +
                                       std::to_string(violation),
                                   violation);
        }

        const std::size_t i = i_up;
        const std::size_t j = i_low;
        const double old_ai = alpha[i];
        const double old_aj = alpha[j];

        if (ys[i] != ys[j]) {
            double quad = q(i, i) + q(j, j) + 2.0 * q(i, j);
            if (quad <= 0.0) quad = tau;
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0.0) {
                if (alpha[j] < 0.0) {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else {
                if (alpha[i] < 0.0) {
                    alpha[i] = 0.0;
                    alpha[j] = -diff;
                }
            }
            if (diff > 0.0) {
                if (alpha[i] > c) {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else {
                if (alpha[j] > c) {
                    alpha[j] = c;
                    alpha[i] = c + diff;
                }
            }
        } else {
            double quad = q(i, i) + q(j, j) - 2.0 * q(i, j);
            if (quad <= 0.0) quad = tau;
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > c) {
                if (alpha[i] > c) {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
            } else {
                if (alpha[j] < 0.0) {
                    alpha[j] = 0.0;
                    alpha[i] = sum;
                }
            }
            if (sum > c) {
                if (alpha[j] > c) {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else {
                if (alpha[i] < 0.0) {
                    alpha[i] = 0.0;
                    alpha[j] = sum;
                }
            }
        }

        const double dai = alpha[i] - old_ai;
        const double daj = alpha[j] - old_aj;
        for (std::size_t t = 0; t < n; ++t) {
            grad[t] += q(t, i) * dai + q(t, j) * daj;
        }
    }

    // bias from free support vectors, else the midpoint of the KKT bounds
    double bias = 0.0;
    int free_count = 0;
    for (std::size_t t = 0; t < n; ++t) {
        if (alpha[t] > 0.0 && alpha[t] < c) {
            bias += -ys[t] * grad[t];
            ++free_count;
        }
    }
    if (free_count > 0) {
        bias /= free_count;
    } else {
        double m_up = -std::numeric_limits<double>::infinity();
        double m_low = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n; ++t) {
            const double v = -ys[t] * grad[t];
            const bool in_up = (ys[t] > 0 && alpha[t] < c) || (ys[t] < 0 && alpha[t] > 0);
            const bool in_low = (ys[t] < 0 && alpha[t] < c) || (ys[t] > 0 && alpha[t] > 0);
            if (in_up) m_up = std::max(m_up, v);
            if (in_low) m_low = std::min(m_low, v);
        }
        bias = (m_up + m_low) / 2.0;
    }

    if (dual_out) {
        dual_out->alphas = alpha;
        dual_out->labels = ys;
        dual_out->bias = bias;
        dual_out->kkt_violation = violation;
        double obj = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            // G = Q*alpha - e, so a'Qa = a'(G + e)
            obj += alpha[t] * (1.0 - 0.5 * (grad[t] + 1.0));
        }
        dual_out->objective = obj;
    }

    FeatureMatrix support;
    std::vector<double> coef;
    for (std::size_t t = 0; t < n; ++t) {
        if (alpha[t] > 0.0) {
            support.push_back(xs[t]);
            coef.push_back(alpha[t] * ys[t]);
        }
    }
    return std::make_unique<SvmModel>(params, std::move(support), std::move(coef), bias,
                                      violation, d, seed);
}

}  // namespace ttpred
