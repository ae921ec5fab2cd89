#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xplain/classifier.hpp"
#include "xplain/dataset.hpp"
#include "xplain/knn.hpp"
#include "xplain/logistic_regression.hpp"

namespace xplain {

enum class EvidenceKind { Global, Local };
enum class Polarity { Positive, Negative };

struct WeightedPoint {
    std::size_t row_index = 0;
    double weight = 0.0;
    EvidenceKind kind = EvidenceKind::Global;
    Polarity polarity = Polarity::Positive;
};

/// Unset thresholds are resolved from the data: t_g and t_l fall back to the
/// 20th percentile of the respective distance distribution over all training
/// rows, t_d to (range of the spread feature) / (2 * m_bins).
struct SelectionParams {
    std::optional<double> t_g;
    std::optional<double> t_l;
    std::optional<double> t_d;
    std::size_t m_bins = 8;
    std::size_t max_per_step = 8;
    std::uint64_t seed = 0;
};

struct EvidenceSet {
    std::vector<WeightedPoint> positive;
    std::vector<WeightedPoint> negative;
    std::string model_kind;
    std::vector<std::string> warnings;
};

/// Rows whose predicted label matches and whose distance to the LR hyperplane
/// is at most t_g, weighted 1/(1+distance), keeping the max_per_step closest
/// (ties to the lower row). Output ascends by row index.
std::vector<WeightedPoint> select_lr_global(const LRModel& model, const Dataset& ds, int label,
                                            const SelectionParams& params);

/// Rows whose predicted label matches within radius t_l of the test point,
/// weighted 1/(1+distance), keeping the max_per_step closest.
std::vector<WeightedPoint> select_local(const Dataset& ds, const TestQuery& x0, int label,
                                        const SelectionParams& params,
                                        const Classifier& model);

struct KnnGlobalResult {
    std::vector<WeightedPoint> points;
    /// Set when the per-class hull could not be built and the selection fell
    /// back to all rows of the class.
    bool hull_fallback = false;
};

/// Decision-boundary evidence for kNN: vertices of the convex hull of the
/// rows predicted as `label`, sampled along m_bins equally spaced values of
/// the highest-variance feature (one seeded uniform pick per bin among the
/// vertices within t_d), weighted 1/(1+distance to the test point), capped at
/// max_per_step by weight. Four or more feature dimensions use the sampled
/// approximate hull.
KnnGlobalResult select_knn_global(const KnnModel& model, const Dataset& ds, const TestQuery& x0,
                                  int label, const SelectionParams& params);

/// Global and local evidence for the predicted class of the test point and,
/// with labels swapped, for the opposite class. A row selected as both global
/// and local keeps its global entry. Errors when both polarities come back
/// empty.
EvidenceSet build_evidence_sets(const Classifier& model, const Dataset& ds, const TestQuery& x0,
                                const SelectionParams& params);

/// Type-7 linear-interpolation percentile (p in [0,1]) of an unsorted sample.
double percentile(std::vector<double> values, double p);

} // namespace xplain
