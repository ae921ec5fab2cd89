#include "xplain/report.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace xplain {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json raw_value_json(const RawValue& v) {
    if (std::holds_alternative<double>(v)) return std::get<double>(v);
    return std::get<std::string>(v);
}

ordered_json evidence_points_json(const std::vector<WeightedPoint>& points) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : points) {
        ordered_json e;
        e["row"] = p.row_index;
        e["weight"] = p.weight;
        e["kind"] = p.kind == EvidenceKind::Global ? "global" : "local";
        arr.push_back(std::move(e));
    }
    return arr;
}

ordered_json concepts_json(const std::vector<WeightedConcept>& concepts) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : concepts) {
        ordered_json e;
        e["id"] = c.id;
        e["weight"] = c.weight;
        arr.push_back(std::move(e));
    }
    return arr;
}

ordered_json input_concepts_json(const InputConceptSet& in) {
    ordered_json j;
    j["concepts"] = concepts_json(in.concepts);
    ordered_json unmapped = ordered_json::array();
    for (const auto& [feature, value] : in.residual) {
        ordered_json e;
        e["feature"] = feature;
        e["value"] = raw_value_json(value);
        unmapped.push_back(std::move(e));
    }
    j["unmapped"] = std::move(unmapped);
    return j;
}

ordered_json output_concepts_json(const ScoredConceptSet& out) {
    ordered_json j;
    j["concepts"] = concepts_json(out.concepts);
    ordered_json derived = ordered_json::object();
    for (const auto& [id, sources] : out.matching_map) {
        derived[id] = ordered_json(sources);
    }
    j["derived_from"] = std::move(derived);
    j["scores"] = {{"s_v", out.s_v}, {"s_l", out.s_l}, {"s_d", out.s_d}, {"total", out.total}};
    j["depth"] = out.depth;
    j["restart"] = out.restart;
    return j;
}

ordered_json ranked_entries_json(const std::vector<RankedEntry>& entries) {
    ordered_json arr = ordered_json::array();
    for (const auto& e : entries) {
        ordered_json o;
        o["id"] = e.id;
        o["weight"] = e.weight;
        o["step"] = e.step;
        arr.push_back(std::move(o));
    }
    return arr;
}

std::string join_ids(const std::vector<RankedEntry>& entries) {
    if (entries.empty()) return "-";
    std::string out;
    for (const auto& e : entries) {
        if (!out.empty()) out += ", ";
        out += e.id;
    }
    return out;
}

} // namespace

std::string render_report_json(const ExplanationReport& report) {
    ordered_json j;

    j["meta"] = {{"tool", "xplain"},
                 {"version", report.tool_version},
                 {"seed", report.seed},
                 {"model", report.model_kind},
                 {"dataset", report.dataset_path},
                 {"importance_mode", report.importance_mode}};

    ordered_json test;
    if (report.test_row) test["row"] = *report.test_row;
    ordered_json features = ordered_json::object();
    for (const auto& [name, value] : report.test_features) {
        features[name] = raw_value_json(value);
    }
    test["features"] = std::move(features);
    j["test_point"] = std::move(test);

    ordered_json pred;
    pred["label"] = report.prediction.label;
    pred["label_name"] = report.prediction.label_name;
    if (report.prediction.probability) pred["probability"] = *report.prediction.probability;
    j["prediction"] = std::move(pred);

    if (report.hull) {
        const auto& h = *report.hull;
        ordered_json hull;
        hull["class_union_vertex_count"] = h.class_union_vertex_count;
        hull["all_points_vertex_count"] = h.all_points_vertex_count;
        ordered_json per_class = ordered_json::array();
        for (const auto& [label, count] : h.per_class_counts) {
            per_class.push_back({{"label", label}, {"count", count}});
        }
        hull["per_class"] = std::move(per_class);
        hull["class_union_rows"] = ordered_json(h.class_union_rows);
        hull["exact"] = h.exact;
        j["hull"] = std::move(hull);
    }

    j["evidence"] = {{"positive", evidence_points_json(report.evidence.positive)},
                     {"negative", evidence_points_json(report.evidence.negative)}};

    j["input_concepts"] = {{"positive", input_concepts_json(report.input_positive)},
                           {"negative", input_concepts_json(report.input_negative)}};

    j["output_concepts"] = {{"positive", output_concepts_json(report.output_positive)},
                            {"negative", output_concepts_json(report.output_negative)}};

    ordered_json diff = ordered_json::array();
    for (const auto& c : report.difference) {
        diff.push_back({{"id", c.id}, {"importance", c.weight}});
    }
    j["difference"] = std::move(diff);

    ordered_json rows = ordered_json::array();
    for (const auto& row : report.explanation.rows) {
        ordered_json r;
        r["rank"] = row.rank;
        r["uniform"] = ranked_entries_json(row.uniform);
        r["contrastive"] = ranked_entries_json(row.contrastive);
        rows.push_back(std::move(r));
    }
    j["explanation"] = std::move(rows);

    j["warnings"] = ordered_json(report.warnings);

    return j.dump(2) + "\n";
}

std::string render_report_table(const ExplanationReport& report) {
    std::ostringstream os;
    os << "prediction: " << report.prediction.label_name << " (label "
       << report.prediction.label << ")";
    if (report.prediction.probability) {
        os << ", probability " << *report.prediction.probability;
    }
    os << "\n\n";

    std::size_t w_uniform = std::string("uniform").size();
    std::size_t w_contrast = std::string("contrastive").size();
    std::vector<std::pair<std::string, std::string>> cells;
    for (const auto& row : report.explanation.rows) {
        cells.emplace_back(join_ids(row.uniform), join_ids(row.contrastive));
        w_uniform = std::max(w_uniform, cells.back().first.size());
        w_contrast = std::max(w_contrast, cells.back().second.size());
    }

    const auto pad = [](const std::string& s, std::size_t w) {
        return s + std::string(w - s.size(), ' ');
    };
    os << "rank | " << pad("uniform", w_uniform) << " | " << pad("contrastive", w_contrast)
       << "\n";
    os << "-----+-" << std::string(w_uniform, '-') << "-+-" << std::string(w_contrast, '-')
       << "\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        std::string rank = std::to_string(report.explanation.rows[i].rank);
        os << pad(rank, 4) << " | " << pad(cells[i].first, w_uniform) << " | "
           << pad(cells[i].second, w_contrast) << "\n";
    }

    if (!report.warnings.empty()) {
        os << "\n";
        for (const auto& w : report.warnings) os << "warning: " << w << "\n";
    }
    return os.str();
}

} // namespace xplain
