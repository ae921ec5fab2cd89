#include "xplain/knn.hpp"

#include <algorithm>

#include "xplain/errors.hpp"

namespace xplain {

KnnModel::KnnModel(std::vector<std::vector<double>> points, std::vector<int> labels,
                   std::size_t k)
    : points_(std::move(points)), labels_(std::move(labels)), k_(k) {
    if (points_.empty()) throw InputError("kNN model needs at least one training point");
    if (points_.size() != labels_.size()) {
        throw InputError("kNN point and label counts differ");
    }
    if (k_ == 0) throw InputError("kNN requires k >= 1");
    if (k_ > points_.size()) {
        throw InputError("kNN k=" + std::to_string(k_) + " exceeds the " +
                         std::to_string(points_.size()) + " training points");
    }
}

std::vector<std::size_t> KnnModel::neighbors(std::span<const double> x) const {
    std::vector<std::pair<double, std::size_t>> order;
    order.reserve(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        order.emplace_back(euclid_distance(points_[i], x), i);
    }
    std::sort(order.begin(), order.end());
    std::vector<std::size_t> out;
    out.reserve(k_);
    for (std::size_t i = 0; i < k_; ++i) out.push_back(order[i].second);
    return out;
}

int KnnModel::predict_label(std::span<const double> x) const {
    std::size_t pos = 0;
    for (std::size_t idx : neighbors(x)) pos += labels_[idx] == 1 ? 1 : 0;
    return 2 * pos > k_ ? 1 : 0;
}

KnnModel knn_train(const Dataset& ds, const KnnParams& params) {
    return KnnModel(ds.points, ds.labels, params.k);
}

} // namespace xplain
