#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "xplain/config.hpp"
#include "xplain/errors.hpp"
#include "xplain/pipeline.hpp"
#include "xplain/report.hpp"
#include "xplain/svg_plot.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPipeline = 1;
constexpr int kExitInput = 2;

std::vector<xplain::RawValue> parse_test_values(const std::string& text) {
    std::vector<xplain::RawValue> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::size_t end = comma == std::string::npos ? text.size() : comma;
        std::string cell = text.substr(start, end - start);
        const auto l = cell.find_first_not_of(" \t");
        const auto r = cell.find_last_not_of(" \t");
        cell = l == std::string::npos ? std::string() : cell.substr(l, r - l + 1);
        if (cell.empty()) {
            throw xplain::InputError("--test: empty value in '" + text + "'");
        }
        double number = 0.0;
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), number);
        if (ec == std::errc() && ptr == cell.data() + cell.size()) {
            values.emplace_back(number);
        } else {
            values.emplace_back(cell);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return values;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw xplain::InputError("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw xplain::InputError("failed writing output file '" + path + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ontology-based explanation of binary classifier predictions"};

    std::string config_path;
    std::string dataset_path, model_kind, ontology_path, blc_rules_path, mapping_path;
    std::string out_path, plot_path, format, test_values;
    std::int64_t test_index = -1;
    std::uint64_t seed = 0;
    bool seed_set = false;

    app.add_option("--config", config_path, "Run configuration (JSON)")->required();
    app.add_option("--dataset", dataset_path, "Override the dataset CSV path");
    app.add_option("--model", model_kind, "Override the model kind (lr or knn)");
    app.add_option("--test-index", test_index, "Explain this dataset row (0-based, held out)");
    app.add_option("--test", test_values, "Explain an inline point: comma-separated values");
    app.add_option("--ontology", ontology_path, "Override the ontology JSON path");
    app.add_option("--blc-rules", blc_rules_path, "Override the categorization rules path");
    app.add_option("--mapping", mapping_path, "Override the concept mapping path");
    app.add_option("--seed", seed, "Override the run seed");
    app.add_option("--out", out_path, "Write the JSON report to this file");
    app.add_option("--plot", plot_path, "Write an SVG plot to this file");
    app.add_option("--format", format, "Stdout format: json or table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }
    seed_set = app.count("--seed") > 0;

    xplain::RunConfig cfg;
    try {
        cfg = xplain::parse_config(config_path);
        if (!dataset_path.empty()) cfg.dataset_path = dataset_path;
        if (!model_kind.empty()) cfg.model.kind = model_kind;
        if (test_index >= 0) {
            cfg.test.index = static_cast<std::size_t>(test_index);
            cfg.test.values.clear();
        }
        if (!test_values.empty()) {
            cfg.test.values = parse_test_values(test_values);
            cfg.test.index.reset();
        }
        if (!ontology_path.empty()) cfg.ontology_path = ontology_path;
        if (!blc_rules_path.empty()) cfg.blc_rules_path = blc_rules_path;
        if (!mapping_path.empty()) cfg.mapping_path = mapping_path;
        if (seed_set) cfg.seed = seed;
        if (!out_path.empty()) cfg.output.report_path = out_path;
        if (!plot_path.empty()) cfg.output.plot_path = plot_path;
        if (!format.empty()) cfg.output.format = format;
        xplain::validate_config(cfg);
    } catch (const xplain::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        const xplain::PipelineOutcome outcome = xplain::run_pipeline(cfg);

        const std::string json = xplain::render_report_json(outcome.report);
        if (cfg.output.format == "table") {
            std::cout << xplain::render_report_table(outcome.report);
        } else {
            std::cout << json;
        }
        if (!cfg.output.report_path.empty()) {
            write_file(cfg.output.report_path, json);
        }
        if (!cfg.output.plot_path.empty()) {
            write_file(cfg.output.plot_path,
                       xplain::render_svg_plot(outcome.train, outcome.hull_rows,
                                               outcome.evidence, outcome.x0));
        }
    } catch (const xplain::StageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.input_failure() ? kExitInput : kExitPipeline;
    } catch (const xplain::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPipeline;
    }
    return kExitOk;
}
