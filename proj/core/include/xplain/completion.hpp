#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "xplain/ontology.hpp"
#include "xplain/uplift.hpp"

namespace xplain {

struct CompletionParams {
    std::size_t k = 3;
    std::size_t h = 20;
    std::size_t mp = 5;
    double a1 = 1.0 / 3.0;
    double a2 = 1.0 / 3.0;
    double a3 = 1.0 / 3.0;
    std::uint64_t seed = 0;
};

/// A candidate output concept set with its score breakdown. matching_map
/// records, per output concept, the original input concepts it was derived
/// from; a passthrough concept maps to itself.
struct ScoredConceptSet {
    std::vector<WeightedConcept> concepts;
    std::map<std::string, std::set<std::string>> matching_map;
    double s_v = 0.0;
    double s_l = 0.0;
    double s_d = 0.0;
    double total = 0.0;
    std::size_t depth = 0;
    std::size_t restart = 0;
};

/// Score components for a candidate: s_v favors consuming few distinct
/// inputs, s_l favors small output sets, s_d rewards aggregated weight near
/// its sources (each output contributes weight / max(1, min hop distance to a
/// non-identity source); passthrough contributes nothing).
ScoredConceptSet score_concept_set(const Ontology& o,
                                   const std::vector<WeightedConcept>& concepts,
                                   const std::map<std::string, std::set<std::string>>& sources,
                                   const CompletionParams& params);

/// Merges duplicate ids (summing weights), removes every concept strictly
/// subsumed by another survivor while adding its weight to the most specific
/// surviving subsumer (ties to the smallest id), and sorts the result by
/// weight descending.
std::vector<WeightedConcept> remove_subsumed(const Ontology& o,
                                             std::vector<WeightedConcept> v);

/// Random-restart completion: h times, draws a nonempty random subset of the
/// cleaned input (each concept kept with probability 1/2), then up to k
/// levels replaces the frontier by the successors matched by at least two
/// frontier concepts, keeping the mp heaviest by aggregated weight. The last
/// nonempty frontier is scored; the best restart wins, earliest on ties.
ScoredConceptSet complete(const Ontology& o, const InputConceptSet& sigma_in,
                          const CompletionParams& params);

} // namespace xplain
