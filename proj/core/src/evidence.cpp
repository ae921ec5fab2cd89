#include "xplain/evidence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "xplain/convex_hull.hpp"
#include "xplain/errors.hpp"
#include "xplain/rng.hpp"

namespace xplain {
namespace {

constexpr std::size_t kApproxDirections = 512;

struct Candidate {
    double distance;
    std::size_t row;
};

// Keeps the max_per_step nearest candidates (row index breaks ties), then
// emits them ascending by row with weight 1/(1+distance).
std::vector<WeightedPoint> cap_and_weight(std::vector<Candidate> cands, std::size_t cap,
                                          EvidenceKind kind, Polarity polarity) {
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        return a.distance != b.distance ? a.distance < b.distance : a.row < b.row;
    });
    if (cands.size() > cap) cands.resize(cap);
    std::sort(cands.begin(), cands.end(),
              [](const Candidate& a, const Candidate& b) { return a.row < b.row; });
    std::vector<WeightedPoint> out;
    out.reserve(cands.size());
    for (const auto& c : cands) {
        out.push_back({c.row, 1.0 / (1.0 + c.distance), kind, polarity});
    }
    return out;
}

Polarity polarity_for(int label, int predicted) {
    return label == predicted ? Polarity::Positive : Polarity::Negative;
}

std::vector<int> predict_all(const Classifier& model, const Dataset& ds) {
    std::vector<int> labels(ds.rows());
    for (std::size_t i = 0; i < ds.rows(); ++i) labels[i] = model.predict_label(ds.points[i]);
    return labels;
}

} // namespace

double percentile(std::vector<double> values, double p) {
    if (values.empty()) throw InputError("percentile of an empty sample");
    if (p < 0.0 || p > 1.0) throw InputError("percentile fraction outside [0, 1]");
    std::sort(values.begin(), values.end());
    const double h = p * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

std::vector<WeightedPoint> select_lr_global(const LRModel& model, const Dataset& ds, int label,
                                            const SelectionParams& params) {
    std::vector<double> dist(ds.rows());
    for (std::size_t i = 0; i < ds.rows(); ++i) dist[i] = model.boundary_distance(ds.points[i]);
    const double t_g = params.t_g ? *params.t_g : percentile(dist, 0.2);

    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        if (dist[i] <= t_g && model.predict_label(ds.points[i]) == label) {
            cands.push_back({dist[i], i});
        }
    }
    // The caller decides the polarity; default here is overwritten there.
    return cap_and_weight(std::move(cands), params.max_per_step, EvidenceKind::Global,
                          Polarity::Positive);
}

std::vector<WeightedPoint> select_local(const Dataset& ds, const TestQuery& x0, int label,
                                        const SelectionParams& params,
                                        const Classifier& model) {
    std::vector<double> dist(ds.rows());
    for (std::size_t i = 0; i < ds.rows(); ++i) dist[i] = euclid_distance(ds.points[i], x0.point);
    const double t_l = params.t_l ? *params.t_l : percentile(dist, 0.2);

    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        if (dist[i] <= t_l && model.predict_label(ds.points[i]) == label) {
            cands.push_back({dist[i], i});
        }
    }
    return cap_and_weight(std::move(cands), params.max_per_step, EvidenceKind::Local,
                          Polarity::Positive);
}

KnnGlobalResult select_knn_global(const KnnModel& model, const Dataset& ds, const TestQuery& x0,
                                  int label, const SelectionParams& params) {
    const auto predicted = predict_all(model, ds);
    std::vector<std::size_t> class_rows;
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        if (predicted[i] == label) class_rows.push_back(i);
    }

    KnnGlobalResult result;
    std::vector<std::size_t> vertex_rows;
    if (class_rows.empty()) {
        result.hull_fallback = true;
    } else {
        std::vector<std::vector<double>> class_points;
        class_points.reserve(class_rows.size());
        for (std::size_t r : class_rows) class_points.push_back(ds.points[r]);
        try {
            const ConvexHull hull =
                ds.cols() <= 3
                    ? convex_hull_exact(class_points)
                    : convex_hull_approx(class_points, kApproxDirections,
                                         derive_seed(params.seed, 200 + label));
            for (std::size_t v : hull.vertex_indices) vertex_rows.push_back(class_rows[v]);
        } catch (const Error&) {
            result.hull_fallback = true;
        }
    }
    if (result.hull_fallback) {
        std::vector<Candidate> cands;
        for (std::size_t r : class_rows) {
            cands.push_back({euclid_distance(ds.points[r], x0.point), r});
        }
        result.points = cap_and_weight(std::move(cands), params.max_per_step,
                                       EvidenceKind::Global, Polarity::Positive);
        return result;
    }
    if (vertex_rows.empty()) return result;

    // Spread the picks along the highest-variance feature: one seeded uniform
    // draw per bin among the vertices within t_d of the bin value.
    const std::size_t xv = max_variance_feature(ds);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t r : vertex_rows) {
        lo = std::min(lo, ds.points[r][xv]);
        hi = std::max(hi, ds.points[r][xv]);
    }
    const double t_d = params.t_d ? *params.t_d
                                  : (hi - lo) / (2.0 * static_cast<double>(params.m_bins));

    Rng rng(derive_seed(params.seed, 100 + label));
    std::set<std::size_t> chosen;
    for (std::size_t j = 0; j < params.m_bins; ++j) {
        const double v = params.m_bins == 1
                             ? (lo + hi) / 2.0
                             : lo + (hi - lo) * static_cast<double>(j) /
                                        static_cast<double>(params.m_bins - 1);
        std::vector<std::size_t> bin;
        for (std::size_t r : vertex_rows) {
            if (std::abs(ds.points[r][xv] - v) <= t_d) bin.push_back(r);
        }
        if (!bin.empty()) chosen.insert(bin[rng.bounded(bin.size())]);
    }

    std::vector<Candidate> cands;
    for (std::size_t r : chosen) cands.push_back({euclid_distance(ds.points[r], x0.point), r});
    result.points = cap_and_weight(std::move(cands), params.max_per_step, EvidenceKind::Global,
                                   Polarity::Positive);
    return result;
}

EvidenceSet build_evidence_sets(const Classifier& model, const Dataset& ds, const TestQuery& x0,
                                const SelectionParams& params) {
    if (ds.rows() == 0) throw InputError("evidence selection needs a nonempty dataset");
    const int y0 = model.predict_label(x0.point);

    EvidenceSet ev;
    ev.model_kind = std::string(model.kind());

    for (const int label : {y0, 1 - y0}) {
        const Polarity polarity = polarity_for(label, y0);
        std::vector<WeightedPoint> global;
        if (const auto* lr = dynamic_cast<const LRModel*>(&model)) {
            global = select_lr_global(*lr, ds, label, params);
        } else if (const auto* knn = dynamic_cast<const KnnModel*>(&model)) {
            auto sel = select_knn_global(*knn, ds, x0, label, params);
            global = std::move(sel.points);
            if (sel.hull_fallback) {
                ev.warnings.push_back("class " + std::to_string(label) +
                                      ": hull construction fell back to all class points");
            }
        } else {
            throw Error("evidence selection: unsupported model kind '" +
                        std::string(model.kind()) + "'");
        }
        auto local = select_local(ds, x0, label, params, model);

        std::set<std::size_t> taken;
        auto& out = polarity == Polarity::Positive ? ev.positive : ev.negative;
        for (auto& wp : global) {
            wp.kind = EvidenceKind::Global;
            wp.polarity = polarity;
            if (taken.insert(wp.row_index).second) out.push_back(wp);
        }
        for (auto& wp : local) {
            wp.kind = EvidenceKind::Local;
            wp.polarity = polarity;
            if (taken.insert(wp.row_index).second) out.push_back(wp);
        }
    }

    if (ev.positive.empty() && ev.negative.empty()) {
        throw StageError("evidence", "no representative points; relax thresholds");
    }
    return ev;
}

} // namespace xplain
