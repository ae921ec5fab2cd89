// Micro benchmarks for the hot paths: hull construction, graph queries,
// restart completion, training and uplift. All fixtures are deterministic.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>
#include <vector>

#include "xplain/completion.hpp"
#include "xplain/convex_hull.hpp"
#include "xplain/dataset.hpp"
#include "xplain/logistic_regression.hpp"
#include "xplain/ontology.hpp"
#include "xplain/rng.hpp"
#include "xplain/uplift.hpp"

namespace {

std::string data_path(const std::string& name) {
    return std::string(XPLAIN_DATA_DIR) + "/" + name;
}

std::vector<std::vector<double>> random_cloud(std::size_t m, std::uint64_t seed) {
    xplain::Rng rng(seed);
    std::vector<std::vector<double>> pts;
    pts.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        pts.push_back({rng.gaussian(), rng.gaussian(), rng.gaussian()});
    }
    return pts;
}

const xplain::Dataset& survival_data() {
    static const xplain::Dataset ds = [] {
        xplain::FeatureSchema s;
        s.features = {{"age", xplain::FeatureKind::Numeric, {}},
                      {"yearOp", xplain::FeatureKind::Numeric, {}},
                      {"nodes", xplain::FeatureKind::Numeric, {}}};
        s.label_column = "survival";
        s.positive_label = "1";
        s.negative_label = "2";
        return xplain::load_dataset(data_path("haberman.csv"), s);
    }();
    return ds;
}

const xplain::Ontology& domain_ontology() {
    static const xplain::Ontology o = xplain::load_ontology(data_path("ontology.json"));
    return o;
}

void BM_HullExact(benchmark::State& state) {
    const auto pts = random_cloud(static_cast<std::size_t>(state.range(0)), 42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(xplain::convex_hull_exact(pts));
    }
}
BENCHMARK(BM_HullExact)->Arg(64)->Arg(256)->Arg(1024);

void BM_HullApprox(benchmark::State& state) {
    const auto pts = random_cloud(static_cast<std::size_t>(state.range(0)), 43);
    for (auto _ : state) {
        benchmark::DoNotOptimize(xplain::convex_hull_approx(pts, 256, 7));
    }
}
BENCHMARK(BM_HullApprox)->Arg(1024)->Arg(4096);

void BM_ConceptDistance(benchmark::State& state) {
    const xplain::Ontology& o = domain_ontology();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            xplain::concept_distance(o, "TheSilentGeneration", "NoPosAxillaryNode"));
        benchmark::DoNotOptimize(
            xplain::concept_distance(o, "OperationIn1960s", "TheLostGeneration"));
    }
}
BENCHMARK(BM_ConceptDistance);

void BM_ConceptDifference(benchmark::State& state) {
    const xplain::Ontology& o = domain_ontology();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            xplain::concept_difference(o, "PatientCharacteristic", "AxillaryNodeCount"));
        benchmark::DoNotOptimize(
            xplain::concept_difference(o, "TheSilentGeneration", "TheGIGeneration"));
    }
}
BENCHMARK(BM_ConceptDifference);

void BM_Completion(benchmark::State& state) {
    const xplain::Ontology& o = domain_ontology();
    xplain::InputConceptSet sigma;
    sigma.concepts = {{"TheSilentGeneration", 0.75},
                      {"NoPosAxillaryNode", 0.75},
                      {"OperationIn1960s", 0.5},
                      {"OperationIn1950s", 0.25}};
    xplain::CompletionParams params;
    params.h = static_cast<std::size_t>(state.range(0));
    params.seed = 7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(xplain::complete(o, sigma, params));
    }
}
BENCHMARK(BM_Completion)->Arg(20)->Arg(100);

void BM_LrTrain(benchmark::State& state) {
    const xplain::Dataset& ds = survival_data();
    xplain::LRTrainParams params;
    params.iterations = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(xplain::lr_train(ds, params));
    }
}
BENCHMARK(BM_LrTrain)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_UpliftPoint(benchmark::State& state) {
    const xplain::Ontology& o = domain_ontology();
    const xplain::BlcRuleSet rules = xplain::load_blc_rules(data_path("blc_rules.json"));
    const xplain::MappingTable table = xplain::load_mapping(data_path("mapping.json"), o);
    const std::vector<std::pair<std::string, xplain::RawValue>> patient = {
        {"age", 35.0}, {"yearOp", 1963.0}, {"nodes", 0.0}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(xplain::uplift_point(rules, table, o, patient, 1.0));
    }
}
BENCHMARK(BM_UpliftPoint);

} // namespace

BENCHMARK_MAIN();
