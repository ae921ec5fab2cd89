#include "xplain/pipeline.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "xplain/completion.hpp"
#include "xplain/contraction.hpp"
#include "xplain/convex_hull.hpp"
#include "xplain/errors.hpp"
#include "xplain/knn.hpp"
#include "xplain/logistic_regression.hpp"
#include "xplain/ontology.hpp"
#include "xplain/rng.hpp"
#include "xplain/uplift.hpp"

namespace xplain {
namespace {

// Each randomized stage draws from its own sub-stream of the run seed.
constexpr std::uint64_t kSelectionTag = 1;
constexpr std::uint64_t kPositiveCompletionTag = 22;
constexpr std::uint64_t kNegativeCompletionTag = 35;
constexpr std::uint64_t kHullTag = 4;

template <typename F>
decltype(auto) stage(const char* name, bool input_failure, F&& f) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what(), input_failure);
    }
}

std::vector<double> encode_point(const FeatureSchema& schema,
                                 const std::vector<RawValue>& values) {
    std::vector<double> out;
    for (std::size_t j = 0; j < schema.features.size(); ++j) {
        const auto& spec = schema.features[j];
        const auto& v = values[j];
        if (spec.kind == FeatureKind::Numeric) {
            if (!std::holds_alternative<double>(v)) {
                throw InputError("test point: feature '" + spec.name + "' expects a number");
            }
            out.push_back(std::get<double>(v));
        } else {
            if (!std::holds_alternative<std::string>(v)) {
                throw InputError("test point: feature '" + spec.name +
                                 "' expects a category name");
            }
            const auto& cat = std::get<std::string>(v);
            const auto it = std::find(spec.categories.begin(), spec.categories.end(), cat);
            if (it == spec.categories.end()) {
                throw InputError("test point: unknown category '" + cat + "' for feature '" +
                                 spec.name + "'");
            }
            for (auto c = spec.categories.begin(); c != spec.categories.end(); ++c) {
                out.push_back(c == it ? 1.0 : 0.0);
            }
        }
    }
    return out;
}

HullSummary summarize_hulls(const Dataset& train, std::uint64_t seed,
                            std::vector<std::size_t>& union_rows) {
    const std::size_t d = train.cols();
    HullSummary hs;
    hs.exact = d >= 2 && d <= 3;
    const auto build = [&](const std::vector<std::vector<double>>& pts, std::uint64_t tag) {
        if (hs.exact) return convex_hull_exact(pts);
        return convex_hull_approx(pts, 512, derive_seed(seed, tag));
    };

    std::set<std::size_t> union_set;
    for (int label : {0, 1}) {
        std::vector<std::vector<double>> pts;
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < train.rows(); ++i) {
            if (train.labels[i] == label) {
                pts.push_back(train.points[i]);
                rows.push_back(i);
            }
        }
        const ConvexHull h = build(pts, kHullTag + 1 + static_cast<std::uint64_t>(label));
        for (std::size_t v : h.vertex_indices) union_set.insert(rows[v]);
        hs.per_class_counts.emplace_back(label, h.vertex_indices.size());
    }
    const ConvexHull all = build(train.points, kHullTag);
    hs.all_points_vertex_count = all.vertex_indices.size();
    hs.class_union_vertex_count = union_set.size();
    union_rows.assign(union_set.begin(), union_set.end());
    hs.class_union_rows = union_rows;
    return hs;
}

} // namespace

PipelineOutcome run_pipeline(const RunConfig& cfg) {
    validate_config(cfg);

    const Dataset full = stage("load_dataset", true,
                               [&] { return load_dataset(cfg.dataset_path, cfg.schema); });
    const Ontology onto =
        stage("load_ontology", true, [&] { return load_ontology(cfg.ontology_path); });
    const BlcRuleSet rules =
        stage("load_blc_rules", true, [&] { return load_blc_rules(cfg.blc_rules_path); });
    const MappingTable mapping =
        stage("load_mapping", true, [&] { return load_mapping(cfg.mapping_path, onto); });

    PipelineOutcome out;
    ExplanationReport& report = out.report;
    report.tool_version = kToolVersion;
    report.seed = cfg.seed;
    report.model_kind = cfg.model.kind;
    report.dataset_path = cfg.dataset_path;
    report.importance_mode =
        cfg.contraction.mode == ImportanceMode::Proximity ? "proximity" : "literal";

    std::vector<std::size_t> train_to_orig;
    stage("encode", true, [&] {
        Dataset encoded = one_hot_encode(full);
        if (cfg.test.index) {
            const std::size_t idx = *cfg.test.index;
            if (idx >= encoded.rows()) {
                throw InputError("test index " + std::to_string(idx) + " is out of range (" +
                                 std::to_string(encoded.rows()) + " rows)");
            }
            out.x0.point = encoded.points[idx];
            out.x0.source_row = idx;
            for (std::size_t j = 0; j < encoded.schema.features.size(); ++j) {
                out.x0.raw.emplace_back(encoded.schema.features[j].name,
                                        encoded.raw_rows[idx][j]);
            }
            out.train = std::move(encoded);
            out.train.points.erase(out.train.points.begin() + static_cast<std::ptrdiff_t>(idx));
            out.train.labels.erase(out.train.labels.begin() + static_cast<std::ptrdiff_t>(idx));
            out.train.raw_rows.erase(out.train.raw_rows.begin() +
                                     static_cast<std::ptrdiff_t>(idx));
            for (std::size_t i = 0; i <= out.train.rows(); ++i) {
                if (i != idx) train_to_orig.push_back(i);
            }
        } else {
            out.x0.point = encode_point(encoded.schema, cfg.test.values);
            for (std::size_t j = 0; j < encoded.schema.features.size(); ++j) {
                out.x0.raw.emplace_back(encoded.schema.features[j].name, cfg.test.values[j]);
            }
            out.train = std::move(encoded);
            for (std::size_t i = 0; i < out.train.rows(); ++i) train_to_orig.push_back(i);
        }
    });
    report.test_row = out.x0.source_row;
    report.test_features = out.x0.raw;

    std::optional<LRModel> lr_model;
    std::optional<KnnModel> knn_model;
    const Classifier* clf = nullptr;
    stage("train", false, [&] {
        if (cfg.model.kind == "lr") {
            lr_model = lr_train(out.train, cfg.model.lr);
            clf = &*lr_model;
        } else {
            knn_model = knn_train(out.train, KnnParams{cfg.model.knn_k});
            clf = &*knn_model;
        }
    });

    stage("predict", false, [&] {
        report.prediction.label = clf->predict_label(out.x0.point);
        report.prediction.label_name = report.prediction.label == 1
                                           ? cfg.schema.positive_label
                                           : cfg.schema.negative_label;
        if (lr_model) report.prediction.probability = lr_model->probability(out.x0.point);
    });

    stage("hull", false, [&] {
        try {
            report.hull = summarize_hulls(out.train, cfg.seed, out.hull_rows);
            for (auto& r : report.hull->class_union_rows) r = train_to_orig[r];
        } catch (const Error& e) {
            report.warnings.push_back(std::string("hull summary skipped: ") + e.what());
        }
    });

    stage("evidence", false, [&] {
        SelectionParams sel = cfg.selection;
        sel.seed = derive_seed(cfg.seed, kSelectionTag);
        out.evidence = build_evidence_sets(*clf, out.train, out.x0, sel);
        if (out.evidence.positive.empty()) {
            throw Error("no evidence for the predicted class; relax thresholds");
        }
    });
    report.evidence = out.evidence;
    for (auto& p : report.evidence.positive) p.row_index = train_to_orig[p.row_index];
    for (auto& p : report.evidence.negative) p.row_index = train_to_orig[p.row_index];
    for (const auto& w : out.evidence.warnings) report.warnings.push_back(w);

    stage("uplift", false, [&] {
        report.input_positive = build_input_concepts(rules, mapping, onto,
                                                     out.evidence.positive, out.train,
                                                     cfg.uplift_normalize);
        if (out.evidence.negative.empty()) {
            report.warnings.push_back(
                "no opposite-class evidence; the explanation has no contrastive side");
            return;
        }
        try {
            report.input_negative = build_input_concepts(rules, mapping, onto,
                                                         out.evidence.negative, out.train,
                                                         cfg.uplift_normalize);
        } catch (const StageError&) {
            report.warnings.push_back("opposite-class evidence has no semantic coverage; the "
                                      "explanation has no contrastive side");
        }
    });

    stage("completion", false, [&] {
        CompletionParams cp = cfg.completion;
        cp.seed = derive_seed(cfg.seed, kPositiveCompletionTag);
        report.output_positive = complete(onto, report.input_positive, cp);
        if (!report.input_negative.concepts.empty()) {
            cp.seed = derive_seed(cfg.seed, kNegativeCompletionTag);
            report.output_negative = complete(onto, report.input_negative, cp);
        }
    });

    ContractionResult cr;
    stage("contraction", false, [&] {
        if (report.output_negative.concepts.empty()) {
            cr.diff = report.output_positive.concepts;
        } else {
            cr = contract(onto, report.output_positive.concepts,
                          report.output_negative.concepts, cfg.contraction.delta,
                          cfg.contraction.mode);
            if (cr.diff.empty()) {
                cr = ContractionResult{};
                cr.diff = report.output_positive.concepts;
                report.warnings.push_back("contraction removed every difference concept; "
                                          "ranking the positive concepts directly");
            }
        }
        report.difference = cr.diff;
    });

    stage("ranking", false, [&] {
        report.explanation = rank_groups(onto, cr.diff, cr.produced_by,
                                         report.output_negative.concepts,
                                         cfg.contraction.sigma);
    });

    return out;
}

} // namespace xplain
