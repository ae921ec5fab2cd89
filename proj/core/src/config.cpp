#include "xplain/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include "json.hpp"
#include "xplain/errors.hpp"

namespace xplain {
namespace {

std::string resolve_path(const std::filesystem::path& base, const std::string& p) {
    if (p.empty()) return p;
    std::filesystem::path fp(p);
    if (fp.is_absolute()) return p;
    return (base / fp).lexically_normal().string();
}

FeatureSchema parse_schema(const nlohmann::json& j) {
    FeatureSchema schema;
    if (!j.contains("features") || !j.at("features").is_array() || j.at("features").empty()) {
        throw InputError("config: dataset.features must be a nonempty array");
    }
    for (const auto& f : j.at("features")) {
        FeatureSpec spec;
        if (f.is_string()) {
            spec.name = f.get<std::string>();
        } else {
            spec.name = f.at("name").get<std::string>();
            const std::string kind = f.value("kind", "numeric");
            if (kind == "numeric") {
                spec.kind = FeatureKind::Numeric;
            } else if (kind == "nominal") {
                spec.kind = FeatureKind::Nominal;
            } else {
                throw InputError("config: feature '" + spec.name + "' has unknown kind '" +
                                 kind + "'");
            }
        }
        schema.features.push_back(std::move(spec));
    }
    const auto& label = j.at("label");
    schema.label_column = label.at("column").get<std::string>();
    const auto as_text = [](const nlohmann::json& v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
    };
    schema.positive_label = as_text(label.at("positive"));
    schema.negative_label = as_text(label.at("negative"));
    return schema;
}

RawValue parse_raw_value(const nlohmann::json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return v.get<std::string>();
    throw InputError("config: test point values must be numbers or strings");
}

} // namespace

void validate_config(const RunConfig& cfg) {
    if (cfg.dataset_path.empty()) throw InputError("config: dataset path is required");
    if (cfg.schema.features.empty()) throw InputError("config: feature schema is required");
    if (cfg.schema.label_column.empty()) throw InputError("config: label column is required");
    if (cfg.model.kind != "lr" && cfg.model.kind != "knn") {
        throw InputError("config: model kind must be 'lr' or 'knn', got '" + cfg.model.kind +
                         "'");
    }
    if (cfg.test.index && !cfg.test.values.empty()) {
        throw InputError("config: give either a test index or an inline test point, not both");
    }
    if (!cfg.test.index && cfg.test.values.empty()) {
        throw InputError("config: a test point (index or inline values) is required");
    }
    if (!cfg.test.values.empty() && cfg.test.values.size() != cfg.schema.features.size()) {
        throw InputError("config: test point has " + std::to_string(cfg.test.values.size()) +
                         " values, schema declares " +
                         std::to_string(cfg.schema.features.size()) + " features");
    }
    if (cfg.ontology_path.empty()) throw InputError("config: ontology path is required");
    if (cfg.blc_rules_path.empty()) throw InputError("config: blc rules path is required");
    if (cfg.mapping_path.empty()) throw InputError("config: mapping path is required");
    if (cfg.selection.m_bins < 1 || cfg.selection.max_per_step < 1) {
        throw InputError("config: selection.m_bins and selection.max_per_step must be >= 1");
    }
    if (cfg.contraction.delta < 0.0) throw InputError("config: contraction.delta must be >= 0");
    if (cfg.contraction.sigma < 1) throw InputError("config: contraction.sigma must be >= 1");
    if (cfg.output.format != "json" && cfg.output.format != "table") {
        throw InputError("config: output format must be 'json' or 'table'");
    }
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    const std::filesystem::path base = std::filesystem::path(path).parent_path();

    RunConfig cfg;
    try {
        if (!j.contains("dataset") || !j.at("dataset").is_object()) {
            throw InputError("config: a 'dataset' object is required");
        }
        const auto& ds = j.at("dataset");
        cfg.dataset_path = resolve_path(base, ds.value("path", ""));
        cfg.schema = parse_schema(ds);

        if (j.contains("model")) {
            const auto& m = j.at("model");
            cfg.model.kind = m.value("kind", cfg.model.kind);
            cfg.model.knn_k = m.value("k", cfg.model.knn_k);
            cfg.model.lr.iterations = m.value("iterations", cfg.model.lr.iterations);
            cfg.model.lr.learning_rate = m.value("learning_rate", cfg.model.lr.learning_rate);
            cfg.model.lr.ridge = m.value("ridge", cfg.model.lr.ridge);
        }

        if (j.contains("test")) {
            const auto& t = j.at("test");
            if (t.contains("index")) cfg.test.index = t.at("index").get<std::size_t>();
            if (t.contains("point")) {
                for (const auto& v : t.at("point")) cfg.test.values.push_back(parse_raw_value(v));
            }
        }

        cfg.ontology_path = resolve_path(base, j.value("ontology", ""));
        cfg.blc_rules_path = resolve_path(base, j.value("blc_rules", ""));
        cfg.mapping_path = resolve_path(base, j.value("mapping", ""));

        if (j.contains("selection")) {
            const auto& s = j.at("selection");
            if (s.contains("t_g")) cfg.selection.t_g = s.at("t_g").get<double>();
            if (s.contains("t_l")) cfg.selection.t_l = s.at("t_l").get<double>();
            if (s.contains("t_d")) cfg.selection.t_d = s.at("t_d").get<double>();
            cfg.selection.m_bins = s.value("m_bins", cfg.selection.m_bins);
            cfg.selection.max_per_step = s.value("max_per_step", cfg.selection.max_per_step);
        }

        if (j.contains("completion")) {
            const auto& c = j.at("completion");
            cfg.completion.k = c.value("k", cfg.completion.k);
            cfg.completion.h = c.value("h", cfg.completion.h);
            cfg.completion.mp = c.value("mp", cfg.completion.mp);
            cfg.completion.a1 = c.value("a1", cfg.completion.a1);
            cfg.completion.a2 = c.value("a2", cfg.completion.a2);
            cfg.completion.a3 = c.value("a3", cfg.completion.a3);
        }

        if (j.contains("contraction")) {
            const auto& c = j.at("contraction");
            cfg.contraction.delta = c.value("delta", cfg.contraction.delta);
            cfg.contraction.sigma = c.value("sigma", cfg.contraction.sigma);
            const std::string mode = c.value("importance_mode", "proximity");
            if (mode == "proximity") {
                cfg.contraction.mode = ImportanceMode::Proximity;
            } else if (mode == "literal") {
                cfg.contraction.mode = ImportanceMode::Literal;
            } else {
                throw InputError("config: importance_mode must be 'proximity' or 'literal'");
            }
        }

        if (j.contains("uplift")) {
            cfg.uplift_normalize = j.at("uplift").value("normalize_weights", true);
        }

        if (!j.contains("seed") || !j.at("seed").is_number_unsigned()) {
            throw InputError("config: an unsigned integer 'seed' is mandatory");
        }
        cfg.seed = j.at("seed").get<std::uint64_t>();

        if (j.contains("output")) {
            const auto& out = j.at("output");
            cfg.output.report_path = resolve_path(base, out.value("report", ""));
            cfg.output.plot_path = resolve_path(base, out.value("plot", ""));
            cfg.output.format = out.value("format", cfg.output.format);
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError("config file '" + path + "': " + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    RunConfig cfg = parse_config(path);
    validate_config(cfg);
    return cfg;
}

} // namespace xplain
