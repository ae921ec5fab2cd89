#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "xplain/dataset.hpp"
#include "xplain/evidence.hpp"
#include "xplain/ontology.hpp"

namespace xplain {

/// One basic-level categorization rule. A rule matches either a numeric
/// interval [min, max] (either bound may be open) or an exact value (numeric
/// or nominal). Rules for the same feature must not overlap, so at most one
/// rule fires for any value.
struct BlcRule {
    std::string feature;
    std::optional<double> min;
    std::optional<double> max;
    std::vector<RawValue> equals;
    std::string kg_concept;
};

struct BlcRuleSet {
    std::vector<BlcRule> rules;
};

/// Translates knowledge-graph concept texts into domain-ontology concept ids.
/// Texts without an exact entry fall back to a similarity search over concept
/// labels (see map_to_domain); theta is the acceptance threshold.
struct MappingTable {
    std::vector<std::pair<std::string, std::string>> entries;
    double theta = 0.6;
};

/// The semantic input of the explanation search: concepts with coverage
/// weights plus the feature-value pairs that found no concept.
struct InputConceptSet {
    std::vector<WeightedConcept> concepts;
    std::vector<std::pair<std::string, RawValue>> residual;
};

/// Parses {"rules": [{feature, min?, max?, equals?, concept}]} and rejects
/// rules whose matchers overlap on the same feature.
BlcRuleSet load_blc_rules(const std::string& path);

/// Parses {"entries": {text: concept-id}, "theta": real}. Every target id
/// must exist in the ontology; theta defaults to 0.6.
MappingTable load_mapping(const std::string& path, const Ontology& o);

/// The unique firing rule's concept text, or nullopt when no rule matches.
std::optional<std::string> apply_blc(const BlcRuleSet& rules, const std::string& feature,
                                     const RawValue& value);

/// Exact entry lookup first; otherwise the concept maximizing
/// 0.5 * edit-similarity(text, label) + 0.5 / (1 + hops to the nearest entry
/// target), accepted when the score reaches theta. Ties resolve to the
/// lexicographically smallest concept id.
std::optional<std::string> map_to_domain(const MappingTable& table, const Ontology& o,
                                         const std::string& kg_concept);

struct PointProjection {
    std::vector<WeightedConcept> concepts;
    std::vector<std::pair<std::string, RawValue>> unmapped;
};

/// Routes each feature-value pair through blc and the mapping; pairs that
/// survive both land as concepts weighted `alpha` (duplicates collapse), the
/// rest are returned unmapped.
PointProjection uplift_point(const BlcRuleSet& rules, const MappingTable& table,
                             const Ontology& o,
                             const std::vector<std::pair<std::string, RawValue>>& point,
                             double alpha);

/// Uplifts every evidence point and accumulates concept weights. With
/// `normalize` (the default) weight(c) = sum of alphas of the points yielding
/// c divided by the total alpha, so weights are proportions in (0, 1];
/// otherwise raw alpha sums are kept. Errors when nothing maps at all.
InputConceptSet build_input_concepts(const BlcRuleSet& rules, const MappingTable& table,
                                     const Ontology& o,
                                     const std::vector<WeightedPoint>& evidence,
                                     const Dataset& ds, bool normalize = true);

/// Levenshtein similarity in [0, 1]: 1 - distance / max length.
double edit_similarity(const std::string& a, const std::string& b);

} // namespace xplain
