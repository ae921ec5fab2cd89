#include "xplain/logistic_regression.hpp"

#include <algorithm>
#include <cmath>

#include "xplain/errors.hpp"

namespace xplain {
namespace {

double sigmoid(double y) { return 1.0 / (1.0 + std::exp(-y)); }

double linear_score(std::span<const double> w, std::span<const double> x) {
    double y = w[0];
    for (std::size_t i = 0; i < x.size(); ++i) y += w[i + 1] * x[i];
    return y;
}

} // namespace

LRModel::LRModel(std::vector<double> weights, std::vector<FeatureScaling> scaling)
    : weights_(std::move(weights)), scaling_(std::move(scaling)) {
    if (weights_.size() < 2) {
        throw InputError("LR weight vector needs an intercept and at least one feature weight");
    }
    if (!scaling_.empty() && scaling_.size() != weights_.size() - 1) {
        throw InputError("LR scaling dimension does not match the weight vector");
    }
}

std::vector<double> LRModel::standardized(std::span<const double> x) const {
    if (x.size() != weights_.size() - 1) {
        throw InputError("LR model expects " + std::to_string(weights_.size() - 1) +
                         " features, got " + std::to_string(x.size()));
    }
    if (scaling_.empty()) return {x.begin(), x.end()};
    return apply_scaling(x, scaling_);
}

double LRModel::probability(std::span<const double> x) const {
    const auto xs = standardized(x);
    return sigmoid(linear_score(weights_, xs));
}

int LRModel::predict_label(std::span<const double> x) const {
    return probability(x) >= 0.5 ? 1 : 0;
}

double LRModel::boundary_distance(std::span<const double> x) const {
    const auto xs = standardized(x);
    double norm_sq = 0.0;
    for (std::size_t i = 1; i < weights_.size(); ++i) norm_sq += weights_[i] * weights_[i];
    if (norm_sq <= 0.0) {
        throw Error("boundary distance undefined: all non-intercept weights are zero");
    }
    return std::abs(linear_score(weights_, xs)) / std::sqrt(norm_sq);
}

double lr_log_likelihood(const Dataset& ds, std::span<const double> weights, double ridge) {
    const std::size_t m = ds.rows();
    double ll = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double y = linear_score(weights, ds.points[i]);
        // log p for positives, log (1-p) for negatives, in a form that is
        // stable for large |y|
        const double t = ds.labels[i] == 1 ? y : 0.0;
        ll += t - (y > 0 ? y + std::log1p(std::exp(-y)) : std::log1p(std::exp(y)));
    }
    ll /= static_cast<double>(m);
    if (ridge > 0.0) {
        double penalty = 0.0;
        for (std::size_t j = 1; j < weights.size(); ++j) penalty += weights[j] * weights[j];
        ll -= 0.5 * ridge * penalty;
    }
    return ll;
}

std::vector<double> lr_log_likelihood_gradient(const Dataset& ds,
                                               std::span<const double> weights,
                                               double ridge) {
    const std::size_t m = ds.rows();
    std::vector<double> grad(weights.size(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double p = sigmoid(linear_score(weights, ds.points[i]));
        const double r = static_cast<double>(ds.labels[i]) - p;
        grad[0] += r;
        for (std::size_t j = 0; j < ds.points[i].size(); ++j) grad[j + 1] += r * ds.points[i][j];
    }
    for (auto& g : grad) g /= static_cast<double>(m);
    if (ridge > 0.0) {
        for (std::size_t j = 1; j < weights.size(); ++j) grad[j] -= ridge * weights[j];
    }
    return grad;
}

LRModel lr_train(const Dataset& ds, const LRTrainParams& params) {
    if (ds.rows() == 0) throw InputError("cannot train on an empty dataset");
    const bool has_pos = std::find(ds.labels.begin(), ds.labels.end(), 1) != ds.labels.end();
    const bool has_neg = std::find(ds.labels.begin(), ds.labels.end(), 0) != ds.labels.end();
    if (!has_pos || !has_neg) {
        throw InputError("training set contains a single class; both labels are required");
    }

    auto std_res = standardize(ds);
    const Dataset& sd = std_res.data;

    std::vector<double> w(sd.cols() + 1, 0.0);
    for (std::size_t it = 0; it < params.iterations; ++it) {
        const auto grad = lr_log_likelihood_gradient(sd, w, params.ridge);
        for (std::size_t j = 0; j < w.size(); ++j) w[j] += params.learning_rate * grad[j];
        const double ll = lr_log_likelihood(sd, w, params.ridge);
        if (!std::isfinite(ll)) {
            throw Error("LR training diverged: non-finite objective at iteration " +
                        std::to_string(it + 1));
        }
    }
    return LRModel(std::move(w), std::move(std_res.scaling));
}

} // namespace xplain
