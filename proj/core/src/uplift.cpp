#include "xplain/uplift.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>

#include "json.hpp"
#include "xplain/errors.hpp"

namespace xplain {
namespace {

struct NumericRange {
    double lo;
    double hi;
};

// A rule's numeric footprint: the interval itself, or one degenerate interval
// per numeric equals value. String equals values are collected separately.
void rule_footprint(const BlcRule& r, std::vector<NumericRange>& ranges,
                    std::set<std::string>& strings) {
    if (!r.equals.empty()) {
        for (const auto& v : r.equals) {
            if (const double* d = std::get_if<double>(&v)) {
                ranges.push_back({*d, *d});
            } else {
                strings.insert(std::get<std::string>(v));
            }
        }
        return;
    }
    ranges.push_back({r.min.value_or(-std::numeric_limits<double>::infinity()),
                      r.max.value_or(std::numeric_limits<double>::infinity())});
}

bool rules_overlap(const BlcRule& a, const BlcRule& b) {
    std::vector<NumericRange> ra, rb;
    std::set<std::string> sa, sb;
    rule_footprint(a, ra, sa);
    rule_footprint(b, rb, sb);
    for (const auto& x : ra) {
        for (const auto& y : rb) {
            if (x.lo <= y.hi && y.lo <= x.hi) return true;
        }
    }
    return std::any_of(sa.begin(), sa.end(),
                       [&](const std::string& s) { return sb.count(s) != 0; });
}

bool rule_matches(const BlcRule& r, const RawValue& value) {
    if (!r.equals.empty()) {
        return std::find(r.equals.begin(), r.equals.end(), value) != r.equals.end();
    }
    const double* d = std::get_if<double>(&value);
    if (!d) return false;
    if (r.min && *d < *r.min) return false;
    if (r.max && *d > *r.max) return false;
    return true;
}

} // namespace

double edit_similarity(const std::string& a, const std::string& b) {
    const std::size_t n = a.size(), m = b.size();
    if (n == 0 && m == 0) return 1.0;
    std::vector<std::size_t> prev(m + 1), cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    const double dist = static_cast<double>(prev[m]);
    return 1.0 - dist / static_cast<double>(std::max(n, m));
}

BlcRuleSet load_blc_rules(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open blc rules file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("blc rules file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("rules") || !j.at("rules").is_array()) {
        throw InputError("blc rules file '" + path + "' needs a top-level 'rules' array");
    }

    BlcRuleSet set;
    for (const auto& r : j.at("rules")) {
        BlcRule rule;
        if (!r.contains("feature") || !r.contains("concept")) {
            throw InputError("blc rule needs 'feature' and 'concept'");
        }
        rule.feature = r.at("feature").get<std::string>();
        rule.kg_concept = r.at("concept").get<std::string>();
        if (r.contains("min")) rule.min = r.at("min").get<double>();
        if (r.contains("max")) rule.max = r.at("max").get<double>();
        if (r.contains("equals")) {
            const auto& eq = r.at("equals");
            const auto parse_one = [](const nlohmann::json& v) -> RawValue {
                if (v.is_number()) return v.get<double>();
                if (v.is_string()) return v.get<std::string>();
                throw InputError("blc rule 'equals' values must be numbers or strings");
            };
            if (eq.is_array()) {
                for (const auto& v : eq) rule.equals.push_back(parse_one(v));
            } else {
                rule.equals.push_back(parse_one(eq));
            }
        }
        if (rule.equals.empty() && !rule.min && !rule.max) {
            throw InputError("blc rule for '" + rule.feature +
                             "' needs an interval bound or an 'equals' matcher");
        }
        if (!rule.equals.empty() && (rule.min || rule.max)) {
            throw InputError("blc rule for '" + rule.feature +
                             "' mixes 'equals' with interval bounds");
        }
        if (rule.min && rule.max && *rule.min > *rule.max) {
            throw InputError("blc rule for '" + rule.feature + "' has min > max");
        }
        set.rules.push_back(std::move(rule));
    }

    for (std::size_t i = 0; i < set.rules.size(); ++i) {
        for (std::size_t k = i + 1; k < set.rules.size(); ++k) {
            if (set.rules[i].feature != set.rules[k].feature) continue;
            if (rules_overlap(set.rules[i], set.rules[k])) {
                throw InputError("blc rules for feature '" + set.rules[i].feature +
                                 "' overlap ('" + set.rules[i].kg_concept + "' vs '" +
                                 set.rules[k].kg_concept + "')");
            }
        }
    }
    return set;
}

MappingTable load_mapping(const std::string& path, const Ontology& o) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open mapping file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("mapping file '" + path + "' is not valid JSON: " + e.what());
    }
    MappingTable table;
    table.theta = j.value("theta", 0.6);
    if (table.theta < 0.0 || table.theta > 1.0) {
        throw InputError("mapping theta must lie in [0, 1]");
    }
    if (j.contains("entries")) {
        for (const auto& [text, target] : j.at("entries").items()) {
            if (!target.is_string()) {
                throw InputError("mapping entry '" + text + "' must name a concept id");
            }
            const std::string id = target.get<std::string>();
            if (!o.has_concept(id)) {
                throw InputError("mapping entry '" + text + "' targets unknown concept '" +
                                 id + "'");
            }
            table.entries.emplace_back(text, id);
        }
    }
    std::sort(table.entries.begin(), table.entries.end());
    return table;
}

std::optional<std::string> apply_blc(const BlcRuleSet& rules, const std::string& feature,
                                     const RawValue& value) {
    for (const auto& r : rules.rules) {
        if (r.feature == feature && rule_matches(r, value)) return r.kg_concept;
    }
    return std::nullopt;
}

std::optional<std::string> map_to_domain(const MappingTable& table, const Ontology& o,
                                         const std::string& kg_concept) {
    for (const auto& [text, target] : table.entries) {
        if (text == kg_concept) return target;
    }

    std::set<std::string> anchors;
    for (const auto& [text, target] : table.entries) anchors.insert(target);

    std::optional<std::string> best;
    double best_score = -1.0;
    for (const auto& c : o.concepts()) {
        double structural = 0.0;
        for (const auto& a : anchors) {
            if (const auto d = concept_distance(o, c.id, a)) {
                structural = std::max(structural, 1.0 / (1.0 + *d));
            }
        }
        const double score = 0.5 * edit_similarity(kg_concept, c.label) + 0.5 * structural;
        if (score > best_score || (score == best_score && best && c.id < *best)) {
            best_score = score;
            best = c.id;
        }
    }
    if (best && best_score >= table.theta) return best;
    return std::nullopt;
}

PointProjection uplift_point(const BlcRuleSet& rules, const MappingTable& table,
                             const Ontology& o,
                             const std::vector<std::pair<std::string, RawValue>>& point,
                             double alpha) {
    if (!(alpha > 0.0)) throw InputError("uplift weight must be positive");
    PointProjection proj;
    std::set<std::string> seen;
    for (const auto& [feature, value] : point) {
        const auto kg = apply_blc(rules, feature, value);
        std::optional<std::string> mapped;
        if (kg) mapped = map_to_domain(table, o, *kg);
        if (mapped) {
            if (seen.insert(*mapped).second) proj.concepts.push_back({*mapped, alpha});
        } else {
            proj.unmapped.emplace_back(feature, value);
        }
    }
    return proj;
}

InputConceptSet build_input_concepts(const BlcRuleSet& rules, const MappingTable& table,
                                     const Ontology& o,
                                     const std::vector<WeightedPoint>& evidence,
                                     const Dataset& ds, bool normalize) {
    if (evidence.empty()) throw InputError("input concepts need at least one evidence point");

    double total = 0.0;
    std::map<std::string, double> mass;
    InputConceptSet out;
    for (const auto& wp : evidence) {
        if (wp.row_index >= ds.rows()) {
            throw Error("evidence row " + std::to_string(wp.row_index) + " out of range");
        }
        total += wp.weight;
        std::vector<std::pair<std::string, RawValue>> pairs;
        for (std::size_t j = 0; j < ds.schema.features.size(); ++j) {
            pairs.emplace_back(ds.schema.features[j].name, ds.raw_rows[wp.row_index][j]);
        }
        auto proj = uplift_point(rules, table, o, pairs, wp.weight);
        for (const auto& wc : proj.concepts) mass[wc.id] += wc.weight;
        for (auto& pair : proj.unmapped) out.residual.push_back(std::move(pair));
    }

    if (mass.empty()) {
        throw StageError("uplift", "semantic coverage is zero: no feature-value pair mapped "
                                   "to any ontology concept");
    }
    for (const auto& [id, w] : mass) {
        out.concepts.push_back({id, normalize ? w / total : w});
    }
    return out;
}

} // namespace xplain
