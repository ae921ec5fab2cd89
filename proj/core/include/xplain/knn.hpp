#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "xplain/classifier.hpp"
#include "xplain/dataset.hpp"

namespace xplain {

struct KnnParams {
    std::size_t k = 5;
};

/// Nearest-neighbour classifier over a stored copy of the training points.
/// Neighbours are ordered by (distance, row index) so predictions do not
/// depend on the sort implementation; a tied vote resolves to label 0.
class KnnModel final : public Classifier {
  public:
    KnnModel(std::vector<std::vector<double>> points, std::vector<int> labels, std::size_t k);

    int predict_label(std::span<const double> x) const override;
    std::string_view kind() const override { return "knn"; }

    /// Row indices of the k nearest training points, closest first.
    std::vector<std::size_t> neighbors(std::span<const double> x) const;

    std::size_t k() const { return k_; }
    const std::vector<std::vector<double>>& points() const { return points_; }
    const std::vector<int>& labels() const { return labels_; }

  private:
    std::vector<std::vector<double>> points_;
    std::vector<int> labels_;
    std::size_t k_;
};

KnnModel knn_train(const Dataset& ds, const KnnParams& params);

} // namespace xplain
