#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace xplain {

/// A raw cell value as read from the CSV: numeric or nominal.
using RawValue = std::variant<double, std::string>;

enum class FeatureKind { Numeric, Nominal };

struct FeatureSpec {
    std::string name;
    FeatureKind kind = FeatureKind::Numeric;
    /// Category values in order of first appearance (nominal features only,
    /// filled at load time).
    std::vector<std::string> categories;
};

/// Declares the columns of a dataset: the feature list, the label column and
/// the two label values with their positive/negative roles. The positive
/// label must be declared explicitly; rows carrying any other label value are
/// rejected at load time.
struct FeatureSchema {
    std::vector<FeatureSpec> features;
    std::string label_column;
    std::string positive_label;
    std::string negative_label;
};

/// A loaded dataset. `points` is the real-valued matrix the models consume.
/// Directly after load_dataset, nominal features are stored as category
/// indices; one_hot_encode expands them into indicator columns and updates
/// `column_names` accordingly. `raw_rows` always keeps the original cell
/// values, which the semantic uplift needs for (feature, value) pairs.
struct Dataset {
    FeatureSchema schema;
    std::vector<std::string> column_names;        // one entry per matrix column
    std::vector<std::vector<double>> points;      // m x n
    std::vector<int> labels;                      // 1 = positive, 0 = negative
    std::vector<std::vector<RawValue>> raw_rows;  // m x |schema.features|
    bool encoded = false;

    std::size_t rows() const { return points.size(); }
    std::size_t cols() const { return points.empty() ? 0 : points.front().size(); }
};

/// Per-column standardization parameters returned by standardize().
struct FeatureScaling {
    double mean = 0.0;
    double stddev = 1.0;
    bool zero_variance = false;
};

struct StandardizeResult {
    Dataset data;
    std::vector<FeatureScaling> scaling;
};

/// The point to be explained: encoded vector plus the raw (feature, value)
/// pairs used by the uplift. `source_row` is set when the point was taken
/// from the dataset, so selections can exclude it.
struct TestQuery {
    std::vector<double> point;
    std::vector<std::pair<std::string, RawValue>> raw;
    std::optional<std::size_t> source_row;
};

/// Parses the CSV at `path` against `schema`. The file must carry a header
/// row matching the declared columns. Numeric cells must parse as finite
/// reals; nominal cells are interned as category indices in order of first
/// appearance. Label cells must equal one of the two declared label values.
/// Errors name the offending row (1-based, counting data rows).
Dataset load_dataset(const std::string& path, const FeatureSchema& schema);

/// Expands nominal features into one indicator column per category
/// ("feature=category"). Numeric columns are passed through bit-exactly; a
/// dataset without nominal features comes back with an identical matrix.
Dataset one_hot_encode(const Dataset& ds);

/// Shifts and scales every column to mean 0 / variance 1 (population
/// variance). Zero-variance columns are passed through unchanged and flagged.
StandardizeResult standardize(const Dataset& ds);

/// Applies previously computed scaling parameters to a single point.
std::vector<double> apply_scaling(std::span<const double> x,
                                  const std::vector<FeatureScaling>& scaling);

/// Index of the column with the largest sample variance (ties: lowest index).
std::size_t max_variance_feature(const Dataset& ds);

/// Euclidean distance between two points of equal dimension.
double euclid_distance(std::span<const double> a, std::span<const double> b);

} // namespace xplain
