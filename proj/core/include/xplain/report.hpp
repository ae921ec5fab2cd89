#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xplain/completion.hpp"
#include "xplain/contraction.hpp"
#include "xplain/dataset.hpp"
#include "xplain/evidence.hpp"
#include "xplain/uplift.hpp"

namespace xplain {

struct PredictionInfo {
    int label = 0;
    /// The raw label text from the dataset schema.
    std::string label_name;
    /// Only models with a probabilistic score fill this in.
    std::optional<double> probability;
};

/// Decision-boundary geometry of the training data. The class union counts
/// each row that is a hull vertex of its own class; the all-points count is
/// the plain hull of the full cloud.
struct HullSummary {
    std::size_t class_union_vertex_count = 0;
    std::size_t all_points_vertex_count = 0;
    std::vector<std::pair<int, std::size_t>> per_class_counts;
    /// Dataset row indices of the class-union vertices, ascending.
    std::vector<std::size_t> class_union_rows;
    bool exact = true;
};

struct ExplanationReport {
    std::string tool_version;
    std::uint64_t seed = 0;
    std::string model_kind;
    std::string dataset_path;
    std::string importance_mode;

    std::optional<std::size_t> test_row;
    std::vector<std::pair<std::string, RawValue>> test_features;

    PredictionInfo prediction;
    std::optional<HullSummary> hull;
    EvidenceSet evidence;

    InputConceptSet input_positive;
    InputConceptSet input_negative;
    ScoredConceptSet output_positive;
    ScoredConceptSet output_negative;

    std::vector<WeightedConcept> difference;
    RankedExplanation explanation;
    std::vector<std::string> warnings;
};

/// Serializes the full report with a fixed key order, so identical runs
/// produce identical bytes.
std::string render_report_json(const ExplanationReport& report);

/// Human-readable summary: the prediction line followed by the rank table
/// (uniform and contrastive columns, "-" for an empty cell).
std::string render_report_table(const ExplanationReport& report);

} // namespace xplain
