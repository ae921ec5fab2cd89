#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace xplain {

struct Concept {
    std::string id;
    std::string label;
    /// Marks a concept whose direct children exhaust it; covering concepts
    /// never appear in concept differences, their children stand in for them.
    bool covering = false;
};

struct OntologyEdge {
    std::string from;
    std::string to;
    std::string relation;
    double weight = 1.0;
};

/// A concept paired with a nonnegative weight (input coverage, search mass,
/// or aggregated relation strength depending on the stage).
struct WeightedConcept {
    std::string id;
    double weight = 0.0;
};

/// Weighted labeled concept graph. The "is-a" relation is special: it must be
/// acyclic and drives subsumption; every other relation string is free-form.
class Ontology {
  public:
    Ontology(std::vector<Concept> concepts, std::vector<OntologyEdge> edges);

    const std::vector<Concept>& concepts() const { return concepts_; }
    const std::vector<OntologyEdge>& edges() const { return edges_; }

    bool has_concept(const std::string& id) const;
    const Concept& concept_by_id(const std::string& id) const;
    const std::vector<OntologyEdge>& out_edges(const std::string& id) const;

    std::size_t index_of(const std::string& id) const;
    std::size_t size() const { return concepts_.size(); }

    /// Reflexive-transitive is-a reachability, as concept indices.
    bool index_subsumes(std::size_t general, std::size_t specific) const;
    const std::vector<std::size_t>& undirected_neighbors(std::size_t idx) const;

  private:
    std::vector<Concept> concepts_;
    std::vector<OntologyEdge> edges_;
    std::vector<std::vector<OntologyEdge>> out_;
    std::vector<std::vector<std::size_t>> neighbors_;
    std::vector<std::vector<bool>> ancestors_;
    std::vector<std::pair<std::string, std::size_t>> index_;
};

/// Parses {"concepts": [{id, label, covering?}], "edges": [{from, to,
/// relation, weight?}]}. Missing weights default to 1.0; weights must lie in
/// (0, 1]. Rejects duplicate ids, dangling endpoints, and is-a cycles.
Ontology load_ontology(const std::string& path);

/// Minimum hop count treating every edge as undirected; std::nullopt when the
/// concepts are disconnected.
std::optional<int> concept_distance(const Ontology& o, const std::string& c1,
                                    const std::string& c2);

/// True iff specific is-a* general (reflexive-transitive closure).
bool subsumes(const Ontology& o, const std::string& general, const std::string& specific);

/// Concepts outside `visited` that at least two distinct frontier concepts
/// reach by a single outgoing edge. Sorted by id.
std::vector<std::string> matching_successors(const Ontology& o,
                                             const std::vector<std::string>& frontier,
                                             const std::set<std::string>& visited);

/// Maximal named concepts subsumed by positive but not by negative, with
/// covering concepts excluded. Sorted by id.
std::vector<std::string> concept_difference(const Ontology& o, const std::string& positive,
                                            const std::string& negative);

} // namespace xplain
