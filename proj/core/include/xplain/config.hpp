#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xplain/completion.hpp"
#include "xplain/contraction.hpp"
#include "xplain/dataset.hpp"
#include "xplain/evidence.hpp"
#include "xplain/logistic_regression.hpp"

namespace xplain {

struct ModelConfig {
    std::string kind = "knn";
    std::size_t knn_k = 5;
    LRTrainParams lr;
};

/// Exactly one of index (a 0-based dataset row, held out from training) or
/// values (an inline point in schema feature order) is set.
struct TestPointConfig {
    std::optional<std::size_t> index;
    std::vector<RawValue> values;
};

struct ContractionConfig {
    double delta = 0.3;
    int sigma = 3;
    ImportanceMode mode = ImportanceMode::Proximity;
};

struct OutputConfig {
    std::string report_path;
    std::string plot_path;
    std::string format = "json";
};

struct RunConfig {
    std::string dataset_path;
    FeatureSchema schema;
    ModelConfig model;
    TestPointConfig test;
    std::string ontology_path;
    std::string blc_rules_path;
    std::string mapping_path;
    SelectionParams selection;
    CompletionParams completion;
    ContractionConfig contraction;
    bool uplift_normalize = true;
    std::uint64_t seed = 0;
    OutputConfig output;
};

/// Parses the JSON run configuration without validating it, so callers can
/// apply command-line overrides first. Relative file paths are resolved
/// against the config file's directory. The seed is mandatory: nothing in a
/// run may depend on ambient entropy.
RunConfig parse_config(const std::string& path);

/// parse_config followed by validate_config.
RunConfig load_config(const std::string& path);

/// Validation shared by load_config and CLI overrides; throws on an invalid
/// combination (missing dataset, no test point, unknown model kind, ...).
void validate_config(const RunConfig& cfg);

} // namespace xplain
