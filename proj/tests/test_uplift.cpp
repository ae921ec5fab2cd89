#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "xplain/dataset.hpp"
#include "xplain/errors.hpp"
#include "xplain/ontology.hpp"
#include "xplain/rng.hpp"
#include "xplain/uplift.hpp"

using namespace xplain;

namespace {

std::string data_path(const std::string& name) {
    return std::string(XPLAIN_DATA_DIR) + "/" + name;
}

std::string write_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("xplain_uplift_" + name);
    std::ofstream out(path);
    out << content;
    return path.string();
}

// Reference Levenshtein distance with the full dynamic-programming matrix.
std::size_t lev_oracle(const std::string& a, const std::string& b) {
    const std::size_t n = a.size(), m = b.size();
    std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(m + 1, 0));
    for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
    for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, sub});
        }
    }
    return d[n][m];
}

std::string random_word(Rng& rng, std::size_t max_len) {
    std::string s;
    const std::size_t len = rng.bounded(max_len + 1);
    for (std::size_t i = 0; i < len; ++i) s.push_back(static_cast<char>('a' + rng.bounded(5)));
    return s;
}

Dataset survival_fixture() {
    Dataset ds;
    ds.schema.features = {{"age", FeatureKind::Numeric, {}},
                          {"yearOp", FeatureKind::Numeric, {}},
                          {"nodes", FeatureKind::Numeric, {}}};
    ds.raw_rows = {{35.0, 1963.0, 0.0}, {45.0, 1955.0, 3.0}, {35.0, 1999.0, 0.0}};
    ds.points = {{35, 1963, 0}, {45, 1955, 3}, {35, 1999, 0}};
    ds.labels = {1, 0, 1};
    return ds;
}

std::set<std::string> ids(const std::vector<WeightedConcept>& cs) {
    std::set<std::string> out;
    for (const auto& c : cs) out.insert(c.id);
    return out;
}

} // namespace

TEST_CASE("edit similarity matches the reference matrix") {
    CHECK(edit_similarity("kitten", "sitting") == doctest::Approx(1.0 - 3.0 / 7.0));
    CHECK(edit_similarity("", "") == doctest::Approx(1.0));
    CHECK(edit_similarity("", "abc") == doctest::Approx(0.0));
    CHECK(edit_similarity("abc", "abc") == doctest::Approx(1.0));

    Rng rng(88);
    for (int t = 0; t < 200; ++t) {
        const std::string a = random_word(rng, 12);
        const std::string b = random_word(rng, 12);
        const std::size_t maxlen = std::max(a.size(), b.size());
        const double want = maxlen == 0
                                ? 1.0
                                : 1.0 - static_cast<double>(lev_oracle(a, b)) /
                                            static_cast<double>(maxlen);
        CHECK(edit_similarity(a, b) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("categorization rules fire on intervals and exact values") {
    const BlcRuleSet rules = load_blc_rules(data_path("blc_rules.json"));
    CHECK(rules.rules.size() == 11);

    CHECK(apply_blc(rules, "age", 35.0) == "TheSilentGeneration");
    CHECK(apply_blc(rules, "age", 38.0) == "TheSilentGeneration");
    CHECK(apply_blc(rules, "age", 38.5) == std::nullopt);
    CHECK(apply_blc(rules, "age", 39.0) == "TheGIGeneration");
    CHECK(apply_blc(rules, "age", 83.0) == "TheMissionaryGeneration");
    CHECK(apply_blc(rules, "yearOp", 1963.0) == "OperationIn1960s");
    CHECK(apply_blc(rules, "nodes", 0.0) == "NoPosAxillaryNode");
    CHECK(apply_blc(rules, "nodes", 0.5) == std::nullopt);
    CHECK(apply_blc(rules, "nodes", 1.0) == "OnePosAxillaryNode");
    CHECK(apply_blc(rules, "nodes", 2.0) == "FewPosAxillaryNodes");
    CHECK(apply_blc(rules, "nodes", 30.0) == "ManyPosAxillaryNodes");
    CHECK(apply_blc(rules, "bmi", 25.0) == std::nullopt);
    // Interval rules never fire on nominal values.
    CHECK(apply_blc(rules, "age", RawValue{std::string("old")}) == std::nullopt);
}

TEST_CASE("rule files with conflicting or malformed matchers are rejected") {
    const auto overlap = write_file("overlap.json", R"({"rules": [
        {"feature": "age", "min": 22, "max": 38, "concept": "A"},
        {"feature": "age", "min": 38, "max": 45, "concept": "B"}]})");
    CHECK_THROWS_WITH_AS(load_blc_rules(overlap),
                         "blc rules for feature 'age' overlap ('A' vs 'B')", InputError);

    const auto open_overlap = write_file("open_overlap.json", R"({"rules": [
        {"feature": "age", "max": 10, "concept": "A"},
        {"feature": "age", "min": 5, "concept": "B"}]})");
    CHECK_THROWS_AS(load_blc_rules(open_overlap), InputError);

    const auto eq_in_interval = write_file("eq_in_interval.json", R"({"rules": [
        {"feature": "n", "equals": 5, "concept": "A"},
        {"feature": "n", "min": 2, "max": 8, "concept": "B"}]})");
    CHECK_THROWS_AS(load_blc_rules(eq_in_interval), InputError);

    const auto string_clash = write_file("string_clash.json", R"({"rules": [
        {"feature": "color", "equals": ["red", "blue"], "concept": "A"},
        {"feature": "color", "equals": "blue", "concept": "B"}]})");
    CHECK_THROWS_AS(load_blc_rules(string_clash), InputError);

    const auto mixed = write_file("mixed.json", R"({"rules": [
        {"feature": "age", "min": 1, "equals": 5, "concept": "A"}]})");
    CHECK_THROWS_WITH_AS(load_blc_rules(mixed),
                         "blc rule for 'age' mixes 'equals' with interval bounds", InputError);

    const auto inverted = write_file("inverted.json", R"({"rules": [
        {"feature": "age", "min": 9, "max": 3, "concept": "A"}]})");
    CHECK_THROWS_WITH_AS(load_blc_rules(inverted), "blc rule for 'age' has min > max",
                         InputError);

    const auto bare = write_file("bare.json", R"({"rules": [
        {"feature": "age", "concept": "A"}]})");
    CHECK_THROWS_WITH_AS(load_blc_rules(bare),
                         "blc rule for 'age' needs an interval bound or an 'equals' matcher",
                         InputError);

    const auto nameless = write_file("nameless.json", R"({"rules": [{"min": 1}]})");
    CHECK_THROWS_WITH_AS(load_blc_rules(nameless), "blc rule needs 'feature' and 'concept'",
                         InputError);

    // Same feature, disjoint footprints: a string set never collides with an
    // interval.
    const auto disjoint = write_file("disjoint.json", R"({"rules": [
        {"feature": "n", "equals": "low", "concept": "A"},
        {"feature": "n", "min": 0, "max": 9, "concept": "B"}]})");
    CHECK_NOTHROW(load_blc_rules(disjoint));

    CHECK_THROWS_AS(load_blc_rules("/no/such/rules.json"), InputError);
}

TEST_CASE("mapping files validate theta and targets") {
    const Ontology o = load_ontology(data_path("ontology.json"));
    const MappingTable table = load_mapping(data_path("mapping.json"), o);
    CHECK(table.theta == doctest::Approx(0.6));
    CHECK(table.entries.size() == 11);

    const auto bad_theta = write_file("bad_theta.json", R"({"theta": 1.5, "entries": {}})");
    CHECK_THROWS_WITH_AS(load_mapping(bad_theta, o), "mapping theta must lie in [0, 1]",
                         InputError);

    const auto bad_target =
        write_file("bad_target.json", R"({"entries": {"X": "TheInternetGeneration"}})");
    CHECK_THROWS_WITH_AS(load_mapping(bad_target, o),
                         "mapping entry 'X' targets unknown concept 'TheInternetGeneration'",
                         InputError);
}

TEST_CASE("domain mapping prefers exact entries, then label similarity") {
    const Ontology chain({{"Base", "alpha", false},
                          {"Mid", "beta", false},
                          {"Leaf", "gamma", false}},
                         {{"Mid", "Base", "is-a", 0.5}, {"Leaf", "Mid", "is-a", 0.5}});
    MappingTable table;
    table.entries = {{"alpha", "Base"}};
    table.theta = 0.6;

    CHECK(map_to_domain(table, chain, "alpha") == "Base");

    // One edit away from the anchored label: 0.5 * 0.8 + 0.5 * 1.0 = 0.9.
    CHECK(map_to_domain(table, chain, "alphq") == "Base");
    table.theta = 0.95;
    CHECK(map_to_domain(table, chain, "alphq") == std::nullopt);

    // Perfect label match two hops from the anchor: 0.5 + 0.5 / 3.
    table.theta = 0.6;
    CHECK(map_to_domain(table, chain, "gamma") == "Leaf");
    table.theta = 0.7;
    CHECK(map_to_domain(table, chain, "gamma") == std::nullopt);
}

TEST_CASE("domain mapping breaks score ties toward the smaller id") {
    const Ontology twins({{"Base", "anchor label", false},
                          {"Y", "twin", false},
                          {"X", "twin", false}},
                         {{"X", "Base", "is-a", 0.5}, {"Y", "Base", "is-a", 0.5}});
    MappingTable table;
    table.entries = {{"anchor", "Base"}};
    table.theta = 0.7;
    // X and Y both score 0.5 * 1.0 + 0.5 * 0.5 = 0.75; the smaller id wins
    // even though Y is declared first.
    CHECK(map_to_domain(table, twins, "twin") == "X");
}

TEST_CASE("a single point lifts to its matched concepts") {
    const Ontology o = load_ontology(data_path("ontology.json"));
    const BlcRuleSet rules = load_blc_rules(data_path("blc_rules.json"));
    const MappingTable table = load_mapping(data_path("mapping.json"), o);

    const std::vector<std::pair<std::string, RawValue>> patient = {
        {"age", 35.0}, {"yearOp", 1963.0}, {"nodes", 0.0}};
    const PointProjection proj = uplift_point(rules, table, o, patient, 0.8);
    CHECK(ids(proj.concepts) == std::set<std::string>{"NoPosAxillaryNode", "OperationIn1960s",
                                                      "TheSilentGeneration"});
    for (const auto& wc : proj.concepts) CHECK(wc.weight == doctest::Approx(0.8));
    CHECK(proj.unmapped.empty());

    // A gap value stays unmapped; duplicates collapse into one concept.
    const std::vector<std::pair<std::string, RawValue>> partial = {
        {"age", 35.0}, {"age", 36.0}, {"yearOp", 1999.0}};
    const PointProjection sparse = uplift_point(rules, table, o, partial, 1.0);
    CHECK(ids(sparse.concepts) == std::set<std::string>{"TheSilentGeneration"});
    REQUIRE(sparse.unmapped.size() == 1);
    CHECK(sparse.unmapped[0].first == "yearOp");

    CHECK_THROWS_AS(uplift_point(rules, table, o, patient, 0.0), InputError);
    CHECK_THROWS_AS(uplift_point(rules, table, o, patient, -1.0), InputError);
}

TEST_CASE("evidence aggregation normalizes concept mass by total weight") {
    const Ontology o = load_ontology(data_path("ontology.json"));
    const BlcRuleSet rules = load_blc_rules(data_path("blc_rules.json"));
    const MappingTable table = load_mapping(data_path("mapping.json"), o);
    const Dataset ds = survival_fixture();

    const std::vector<WeightedPoint> evidence = {
        {0, 1.0, EvidenceKind::Global, Polarity::Positive},
        {1, 0.5, EvidenceKind::Global, Polarity::Positive},
        {2, 0.5, EvidenceKind::Local, Polarity::Positive}};

    const InputConceptSet in = build_input_concepts(rules, table, o, evidence, ds);
    REQUIRE(in.concepts.size() == 6);
    // Output is ordered by concept id.
    const std::vector<std::pair<std::string, double>> want = {
        {"FewPosAxillaryNodes", 0.25},  {"NoPosAxillaryNode", 0.75},
        {"OperationIn1950s", 0.25},     {"OperationIn1960s", 0.5},
        {"TheGIGeneration", 0.25},      {"TheSilentGeneration", 0.75}};
    for (std::size_t i = 0; i < want.size(); ++i) {
        CHECK(in.concepts[i].id == want[i].first);
        CHECK(in.concepts[i].weight == doctest::Approx(want[i].second));
    }
    REQUIRE(in.residual.size() == 1);
    CHECK(in.residual[0].first == "yearOp");

    const InputConceptSet raw = build_input_concepts(rules, table, o, evidence, ds, false);
    for (std::size_t i = 0; i < want.size(); ++i) {
        CHECK(raw.concepts[i].weight == doctest::Approx(want[i].second * 2.0));
    }
}

TEST_CASE("aggregation fails loudly on empty or unmappable evidence") {
    const Ontology o = load_ontology(data_path("ontology.json"));
    const BlcRuleSet rules = load_blc_rules(data_path("blc_rules.json"));
    const MappingTable table = load_mapping(data_path("mapping.json"), o);
    Dataset ds = survival_fixture();

    CHECK_THROWS_WITH_AS(build_input_concepts(rules, table, o, {}, ds),
                         "input concepts need at least one evidence point", InputError);

    // Rename the features so no rule fires anywhere.
    for (auto& f : ds.schema.features) f.name = "x_" + f.name;
    try {
        build_input_concepts(rules, table, o,
                             {{0, 1.0, EvidenceKind::Global, Polarity::Positive}}, ds);
        FAIL("expected a stage error");
    } catch (const StageError& e) {
        CHECK(e.stage() == "uplift");
        CHECK(std::string(e.what()) ==
              "stage 'uplift': semantic coverage is zero: no feature-value pair mapped "
              "to any ontology concept");
    }
}
