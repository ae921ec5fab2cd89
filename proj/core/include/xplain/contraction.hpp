#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "xplain/completion.hpp"
#include "xplain/ontology.hpp"

namespace xplain {

enum class ImportanceMode { Proximity, Literal };

/// How strongly a difference concept relates to the positive evidence
/// concepts. Proximity (default): (1/n) sum of alpha_v / (1 + dist); a
/// disconnected evidence concept contributes 0. Literal: (1/n) sum of
/// alpha_v * dist, erroring on disconnection.
double importance(const Ontology& o, const std::string& c_d,
                  const std::vector<WeightedConcept>& sigma_out_pos, ImportanceMode mode);

struct ContractionResult {
    /// Surviving difference concepts, importance as weight, sorted by
    /// importance descending (ties to the smaller id).
    std::vector<WeightedConcept> diff;
    /// For each surviving concept, the negatives whose difference against
    /// some positive strictly produced it (result other than the positive
    /// itself). Drives ranking step 2.
    std::map<std::string, std::set<std::string>> produced_by;
};

/// Uniform-explanation contraction: unions concept_difference(c_p, c_n) over
/// all positive/negative pairs, drops any result subsumed by some negative,
/// keeps subsumption-maximal survivors, and filters by importance >= delta.
/// An empty result signals the caller to fall back to ranking the positives.
ContractionResult contract(const Ontology& o, const std::vector<WeightedConcept>& sigma_out_pos,
                           const std::vector<WeightedConcept>& sigma_out_neg, double delta,
                           ImportanceMode mode);

struct RankedEntry {
    std::string id;
    double weight = 0.0;
    /// 1 for uniform concepts; 2, 3, or 4 for contrastive concepts depending
    /// on the assignment step.
    int step = 1;
};

struct RankedRow {
    int rank = 1;
    std::vector<RankedEntry> uniform;
    std::vector<RankedEntry> contrastive;
};

struct RankedExplanation {
    std::vector<RankedRow> rows;
};

/// Four-step rank assignment. Step 1 densely ranks the difference concepts
/// by importance (descending, 1e-9 merge width). Step 2 gives each negative
/// that strictly produced surviving concepts the majority rank of those
/// concepts (ties to the better rank). Step 3 gives each remaining negative
/// whose nearest difference concept lies closer than sigma hops the majority
/// rank of those nearest concepts. Step 4 parks the rest one past the worst
/// difference rank.
RankedExplanation rank_groups(const Ontology& o, const std::vector<WeightedConcept>& diff,
                              const std::map<std::string, std::set<std::string>>& produced_by,
                              const std::vector<WeightedConcept>& sigma_out_neg, int sigma);

} // namespace xplain
