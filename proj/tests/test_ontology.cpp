#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "xplain/errors.hpp"
#include "xplain/ontology.hpp"
#include "xplain/rng.hpp"

using namespace xplain;

namespace {

// Reference is-a closure by fixed-point iteration: closure[i] holds every j
// with i is-a* j, including i itself. Deliberately a different algorithm from
// the library's depth-first walk.
std::vector<std::set<std::size_t>> closure_oracle(const Ontology& o) {
    const std::size_t n = o.size();
    std::vector<std::set<std::size_t>> up(n);
    for (std::size_t i = 0; i < n; ++i) up[i].insert(i);
    for (const auto& e : o.edges()) {
        if (e.relation == "is-a") up[o.index_of(e.from)].insert(o.index_of(e.to));
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            std::set<std::size_t> next = up[i];
            for (std::size_t mid : up[i]) next.insert(up[mid].begin(), up[mid].end());
            if (next.size() != up[i].size()) {
                up[i] = std::move(next);
                changed = true;
            }
        }
    }
    return up;
}

// Reference all-pairs undirected hop counts via Floyd-Warshall.
std::vector<std::vector<int>> distance_oracle(const Ontology& o) {
    const std::size_t n = o.size();
    const int inf = 1 << 20;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    for (const auto& e : o.edges()) {
        const std::size_t a = o.index_of(e.from), b = o.index_of(e.to);
        d[a][b] = 1;
        d[b][a] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

// Reference concept difference: enumerate every non-covering concept that the
// positive anchor subsumes and the negative one does not, then keep those not
// strictly below another survivor.
std::vector<std::string> difference_oracle(const Ontology& o,
                                           const std::vector<std::set<std::size_t>>& up,
                                           const std::string& pos, const std::string& neg) {
    const std::size_t p = o.index_of(pos), n = o.index_of(neg);
    std::vector<std::size_t> cand;
    for (std::size_t c = 0; c < o.size(); ++c) {
        if (o.concepts()[c].covering) continue;
        if (up[c].count(p) && !up[c].count(n)) cand.push_back(c);
    }
    std::vector<std::string> out;
    for (std::size_t c : cand) {
        bool top = true;
        for (std::size_t d : cand) {
            if (d != c && up[c].count(d)) top = false;
        }
        if (top) out.push_back(o.concepts()[c].id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Ontology random_ontology(Rng& rng) {
    const std::size_t n = 3 + rng.bounded(28);
    std::vector<Concept> concepts;
    for (std::size_t i = 0; i < n; ++i) {
        concepts.push_back({"C" + std::to_string(i), "concept " + std::to_string(i),
                            rng.uniform() < 0.25});
    }
    // is-a edges always point from a higher index to a lower one, which keeps
    // the relation acyclic by construction.
    std::vector<OntologyEdge> edges;
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (rng.uniform() < 2.0 / static_cast<double>(n)) {
                edges.push_back({concepts[j].id, concepts[i].id, "is-a", 0.4});
            }
        }
    }
    const std::size_t extra = rng.bounded(n + 1);
    for (std::size_t k = 0; k < extra; ++k) {
        const std::size_t a = rng.bounded(n);
        std::size_t b = rng.bounded(n);
        if (a == b) continue;
        edges.push_back({concepts[a].id, concepts[b].id, "related-to",
                         0.25 + 0.5 * rng.uniform()});
    }
    return Ontology(std::move(concepts), std::move(edges));
}

Ontology student_ontology() {
    std::vector<Concept> cs = {{"Student", "student", false},
                               {"GraduateStudent", "graduate student", true},
                               {"MasterStudent", "master student", false},
                               {"PhDStudent", "doctoral student", false},
                               {"UndergradStudent", "undergraduate student", false}};
    std::vector<OntologyEdge> es = {{"GraduateStudent", "Student", "is-a", 0.4},
                                    {"MasterStudent", "GraduateStudent", "is-a", 0.4},
                                    {"PhDStudent", "GraduateStudent", "is-a", 0.4},
                                    {"UndergradStudent", "Student", "is-a", 0.4}};
    return Ontology(std::move(cs), std::move(es));
}

std::string data_path(const std::string& name) {
    return std::string(XPLAIN_DATA_DIR) + "/" + name;
}

} // namespace

TEST_CASE("domain ontology loads with the expected shape") {
    const Ontology o = load_ontology(data_path("ontology.json"));
    CHECK(o.size() == 15);
    CHECK(o.edges().size() == 19);
    CHECK(o.has_concept("TheSilentGeneration"));
    CHECK_FALSE(o.has_concept("TheInternetGeneration"));
    CHECK(o.concept_by_id("Generation").covering);
    CHECK_FALSE(o.concept_by_id("TheSilentGeneration").covering);
    CHECK(o.concept_by_id("OperationIn1960s").label == "Operation in the 1960s");
    CHECK_THROWS_AS(o.concept_by_id("Nope"), InputError);
    CHECK_THROWS_AS(load_ontology(data_path("no_such_ontology.json")), InputError);
}

TEST_CASE("subsumption follows the is-a closure") {
    const Ontology o = load_ontology(data_path("ontology.json"));
    CHECK(subsumes(o, "Generation", "TheSilentGeneration"));
    CHECK(subsumes(o, "PatientCharacteristic", "TheSilentGeneration"));
    CHECK(subsumes(o, "TheSilentGeneration", "TheSilentGeneration"));
    CHECK_FALSE(subsumes(o, "TheSilentGeneration", "Generation"));
    CHECK_FALSE(subsumes(o, "OperationDecade", "TheSilentGeneration"));
    // "precedes" must not leak into subsumption.
    CHECK_FALSE(subsumes(o, "TheSilentGeneration", "TheGIGeneration"));
}

TEST_CASE("undirected hop distance on the domain ontology") {
    const Ontology o = load_ontology(data_path("ontology.json"));
    CHECK(concept_distance(o, "TheGIGeneration", "TheSilentGeneration") == 1);
    CHECK(concept_distance(o, "TheSilentGeneration", "TheGIGeneration") == 1);
    CHECK(concept_distance(o, "OperationIn1960s", "TheSilentGeneration") == 4);
    CHECK(concept_distance(o, "NoPosAxillaryNode", "NoPosAxillaryNode") == 0);
    CHECK(concept_distance(o, "OperationIn1950s", "OperationIn1970s") == 2);
    CHECK_THROWS_AS(concept_distance(o, "Nope", "Generation"), InputError);
}

TEST_CASE("disconnected concepts have no distance") {
    Ontology o({{"A", "a", false}, {"B", "b", false}, {"C", "c", false}},
               {{"A", "B", "is-a", 1.0}});
    CHECK(concept_distance(o, "A", "B") == 1);
    CHECK_FALSE(concept_distance(o, "A", "C").has_value());
}

TEST_CASE("matching successors require two distinct frontier sources") {
    const Ontology o = load_ontology(data_path("ontology.json"));
    const std::vector<std::string> frontier = {"TheSilentGeneration", "TheGIGeneration"};
    CHECK(matching_successors(o, frontier, {}) == std::vector<std::string>{"Generation"});
    CHECK(matching_successors(o, frontier, {"Generation"}).empty());

    // A duplicated frontier entry is still one source.
    const std::vector<std::string> dup = {"TheSilentGeneration", "TheSilentGeneration"};
    CHECK(matching_successors(o, dup, {}).empty());

    // Op50s precedes Op60s precedes Op70s, but each of those targets has a
    // single frontier source; only the shared decade parent qualifies.
    const std::vector<std::string> three = {"OperationIn1950s", "OperationIn1960s",
                                            "OperationIn1970s"};
    const auto got = matching_successors(o, three, {});
    CHECK(got == std::vector<std::string>{"OperationDecade"});

    CHECK_THROWS_AS(matching_successors(o, {}, {}), InputError);
}

TEST_CASE("concept difference on the domain ontology") {
    const Ontology o = load_ontology(data_path("ontology.json"));
    CHECK(concept_difference(o, "TheSilentGeneration", "TheGIGeneration") ==
          std::vector<std::string>{"TheSilentGeneration"});
    CHECK(concept_difference(o, "Generation", "TheSilentGeneration") ==
          std::vector<std::string>{"TheGIGeneration", "TheLostGeneration",
                                   "TheMissionaryGeneration"});
    CHECK(concept_difference(o, "TheSilentGeneration", "TheSilentGeneration").empty());
    // A non-covering positive anchor subsumes all its descendants, so it is
    // the single maximal element.
    CHECK(concept_difference(o, "PatientCharacteristic", "AxillaryNodeCount") ==
          std::vector<std::string>{"PatientCharacteristic"});
}

TEST_CASE("covering concepts are replaced by their children in differences") {
    const Ontology o = student_ontology();
    CHECK(concept_difference(o, "GraduateStudent", "PhDStudent") ==
          std::vector<std::string>{"MasterStudent"});
    // When the positive anchor is not covering it stays maximal itself.
    CHECK(concept_difference(o, "Student", "GraduateStudent") ==
          std::vector<std::string>{"Student"});
    CHECK(concept_difference(o, "Student", "UndergradStudent") ==
          std::vector<std::string>{"Student"});
}

TEST_CASE("construction rejects malformed input") {
    using C = std::vector<Concept>;
    using E = std::vector<OntologyEdge>;
    CHECK_THROWS_WITH_AS(Ontology(C{}, E{}), "ontology: no concepts", InputError);
    CHECK_THROWS_WITH_AS(Ontology(C{{"A", "", false}, {"A", "", false}}, E{}),
                         "ontology: duplicate concept id 'A'", InputError);
    CHECK_THROWS_WITH_AS(
        Ontology(C{{"A", "", false}}, E{{"A", "Missing", "is-a", 0.5}}),
        "ontology: edge 'A' -> 'Missing' references an undeclared concept", InputError);
    CHECK_THROWS_WITH_AS(
        Ontology(C{{"A", "", false}, {"B", "", false}}, E{{"A", "B", "is-a", 0.0}}),
        "ontology: edge 'A' -> 'B' has weight outside (0, 1]", InputError);
    CHECK_THROWS_AS(
        Ontology(C{{"A", "", false}, {"B", "", false}}, E{{"A", "B", "is-a", 1.5}}),
        InputError);
    CHECK_THROWS_WITH_AS(Ontology(C{{"A", "", false}}, E{{"A", "A", "related-to", 0.5}}),
                         "ontology: self-loop on concept 'A'", InputError);
    CHECK_THROWS_WITH_AS(
        Ontology(C{{"A", "", false}, {"B", "", false}},
                 E{{"A", "B", "is-a", 0.5}, {"B", "A", "is-a", 0.5}}),
        "ontology: is-a cycle: A -> B -> A", InputError);
    // Cycles in other relations are fine.
    CHECK_NOTHROW(Ontology(C{{"A", "", false}, {"B", "", false}},
                           E{{"A", "B", "precedes", 0.5}, {"B", "A", "precedes", 0.5}}));
}

TEST_CASE("random ontologies agree with the reference algorithms") {
    Rng rng(7001);
    for (int trial = 0; trial < 200; ++trial) {
        const Ontology o = random_ontology(rng);
        const auto up = closure_oracle(o);
        const auto dist = distance_oracle(o);
        const std::size_t n = o.size();
        const int inf = 1 << 20;

        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const auto& gi = o.concepts()[i].id;
                const auto& gj = o.concepts()[j].id;
                CHECK(subsumes(o, gi, gj) == (up[j].count(i) == 1));
                const auto hops = concept_distance(o, gi, gj);
                if (dist[i][j] >= inf) {
                    CHECK_FALSE(hops.has_value());
                } else {
                    REQUIRE(hops.has_value());
                    CHECK(*hops == dist[i][j]);
                }
            }
        }

        for (int pair = 0; pair < 10; ++pair) {
            const auto& p = o.concepts()[rng.bounded(n)].id;
            const auto& q = o.concepts()[rng.bounded(n)].id;
            CHECK(concept_difference(o, p, q) == difference_oracle(o, up, p, q));
        }
    }
}
