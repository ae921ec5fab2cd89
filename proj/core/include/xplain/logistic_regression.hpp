#pragma once

#include <span>
#include <vector>

#include "xplain/classifier.hpp"
#include "xplain/dataset.hpp"

namespace xplain {

struct LRTrainParams {
    std::size_t iterations = 5000;
    double learning_rate = 0.1;
    double ridge = 0.0; // L2 penalty on non-intercept weights, 0 disables it
};

/// Binary logistic regression. The weight vector includes the intercept at
/// index 0. `scaling` holds the per-feature standardization fitted at
/// training time; predict/boundary_distance apply it to their input, so
/// callers always pass points in the original encoded space. A model built
/// directly from weights (tests, hand-rolled fixtures) has an identity
/// scaling.
class LRModel final : public Classifier {
public:
    LRModel() = default;
    explicit LRModel(std::vector<double> weights, std::vector<FeatureScaling> scaling = {});

    /// P(label = positive | x) via the sigmoid of the linear score.
    double probability(std::span<const double> x) const;

    /// 1 when probability >= 0.5 (points on the boundary count as positive).
    int predict_label(std::span<const double> x) const override;

    std::string_view kind() const override { return "lr"; }

    /// Euclidean distance from x to the decision hyperplane, computed in the
    /// model's (standardized) feature space:
    ///   |w0 + sum_i w_i x_i| / sqrt(sum_{i>=1} w_i^2)
    /// Errors when every non-intercept weight is zero.
    double boundary_distance(std::span<const double> x) const;

    const std::vector<double>& weights() const { return weights_; }
    const std::vector<FeatureScaling>& scaling() const { return scaling_; }

private:
    std::vector<double> standardized(std::span<const double> x) const;

    std::vector<double> weights_; // [intercept, w1 .. wn]
    std::vector<FeatureScaling> scaling_;
};

/// Mean log-likelihood of the labels under weights (intercept at index 0),
/// minus the ridge penalty when enabled. Exposed so the gradient can be
/// verified against finite differences.
double lr_log_likelihood(const Dataset& ds, std::span<const double> weights, double ridge = 0.0);

/// Analytic gradient of lr_log_likelihood with respect to the weights.
std::vector<double> lr_log_likelihood_gradient(const Dataset& ds,
                                               std::span<const double> weights,
                                               double ridge = 0.0);

/// Full-batch gradient ascent on the mean log-likelihood over standardized
/// features. Requires both classes present; reports the iteration on a
/// non-finite objective (divergence).
LRModel lr_train(const Dataset& ds, const LRTrainParams& params = {});

} // namespace xplain
