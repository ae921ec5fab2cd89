#include "xplain/completion.hpp"

#include <algorithm>

#include "xplain/errors.hpp"
#include "xplain/rng.hpp"

namespace xplain {
namespace {

void check_params(const CompletionParams& p) {
    if (p.k < 1 || p.h < 1 || p.mp < 1) {
        throw InputError("completion requires k, h, and mp of at least 1");
    }
    if (p.a1 < 0.0 || p.a2 < 0.0 || p.a3 < 0.0 || p.a1 + p.a2 + p.a3 <= 0.0) {
        throw InputError("completion score weights must be nonnegative with a positive sum");
    }
}

struct Frontier {
    std::vector<WeightedConcept> concepts;
    std::map<std::string, std::set<std::string>> sources;
};

} // namespace

ScoredConceptSet score_concept_set(const Ontology& o,
                                   const std::vector<WeightedConcept>& concepts,
                                   const std::map<std::string, std::set<std::string>>& sources,
                                   const CompletionParams& params) {
    if (concepts.empty()) throw InputError("cannot score an empty concept set");

    ScoredConceptSet out;
    out.concepts = concepts;
    out.matching_map = sources;

    std::set<std::string> consumed;
    double s_d = 0.0;
    for (const auto& wc : concepts) {
        const auto it = sources.find(wc.id);
        if (it == sources.end() || it->second.empty()) {
            throw InputError("concept '" + wc.id + "' has no recorded preimage");
        }
        consumed.insert(it->second.begin(), it->second.end());

        int nearest = -1;
        for (const auto& src : it->second) {
            if (src == wc.id) continue;
            if (const auto d = concept_distance(o, wc.id, src)) {
                if (nearest < 0 || *d < nearest) nearest = *d;
            }
        }
        if (nearest >= 0) s_d += wc.weight / static_cast<double>(std::max(nearest, 1));
    }

    out.s_v = 1.0 / static_cast<double>(consumed.size());
    out.s_l = 1.0 / static_cast<double>(concepts.size());
    out.s_d = s_d;
    out.total = params.a1 * out.s_v + params.a2 * out.s_l + params.a3 * out.s_d;
    return out;
}

std::vector<WeightedConcept> remove_subsumed(const Ontology& o, std::vector<WeightedConcept> v) {
    std::map<std::string, double> mass;
    for (const auto& wc : v) mass[wc.id] += wc.weight;

    std::vector<std::string> ids;
    for (const auto& [id, w] : mass) ids.push_back(id);

    const auto strictly_subsumed = [&](const std::string& spec, const std::string& gen) {
        return spec != gen && subsumes(o, gen, spec);
    };

    std::vector<std::string> survivors;
    for (const auto& c : ids) {
        const bool dominated = std::any_of(ids.begin(), ids.end(), [&](const std::string& g) {
            return strictly_subsumed(c, g);
        });
        if (!dominated) survivors.push_back(c);
    }

    // Weight of a removed concept flows to its most specific surviving
    // subsumer: the one not subsuming any other candidate subsumer.
    for (const auto& c : ids) {
        if (std::find(survivors.begin(), survivors.end(), c) != survivors.end()) continue;
        std::vector<std::string> above;
        for (const auto& g : survivors) {
            if (strictly_subsumed(c, g)) above.push_back(g);
        }
        std::string target;
        for (const auto& g : above) {
            const bool minimal =
                std::none_of(above.begin(), above.end(), [&](const std::string& other) {
                    return strictly_subsumed(other, g);
                });
            if (minimal && (target.empty() || g < target)) target = g;
        }
        mass[target] += mass[c];
    }

    std::vector<WeightedConcept> out;
    for (const auto& id : survivors) out.push_back({id, mass[id]});
    std::sort(out.begin(), out.end(), [](const WeightedConcept& a, const WeightedConcept& b) {
        return a.weight != b.weight ? a.weight > b.weight : a.id < b.id;
    });
    return out;
}

ScoredConceptSet complete(const Ontology& o, const InputConceptSet& sigma_in,
                          const CompletionParams& params) {
    check_params(params);
    if (sigma_in.concepts.empty()) throw InputError("completion needs a nonempty input set");

    const auto cleaned = remove_subsumed(o, sigma_in.concepts);

    bool have_best = false;
    ScoredConceptSet best;
    for (std::size_t restart = 0; restart < params.h; ++restart) {
        Rng rng(params.seed + restart);

        Frontier frontier;
        while (frontier.concepts.empty()) {
            for (const auto& wc : cleaned) {
                if (rng.coin()) frontier.concepts.push_back(wc);
            }
        }
        for (const auto& wc : frontier.concepts) frontier.sources[wc.id] = {wc.id};

        std::set<std::string> visited;
        for (const auto& wc : frontier.concepts) visited.insert(wc.id);

        std::size_t depth = 0;
        for (std::size_t level = 1; level <= params.k; ++level) {
            std::vector<std::string> frontier_ids;
            for (const auto& wc : frontier.concepts) frontier_ids.push_back(wc.id);
            const auto matched = matching_successors(o, frontier_ids, visited);
            if (matched.empty()) break;

            // Aggregated weight: one term per frontier concept with an edge
            // to the successor, using that pair's strongest edge.
            Frontier next;
            for (const auto& cb : matched) {
                double gamma = 0.0;
                std::set<std::string> srcs;
                for (const auto& wc : frontier.concepts) {
                    double lambda = 0.0;
                    for (const auto& e : o.out_edges(wc.id)) {
                        if (e.to == cb) lambda = std::max(lambda, e.weight);
                    }
                    if (lambda > 0.0) {
                        gamma += wc.weight * lambda;
                        const auto& from = frontier.sources.at(wc.id);
                        srcs.insert(from.begin(), from.end());
                    }
                }
                next.concepts.push_back({cb, gamma});
                next.sources[cb] = std::move(srcs);
            }
            std::sort(next.concepts.begin(), next.concepts.end(),
                      [](const WeightedConcept& a, const WeightedConcept& b) {
                          return a.weight != b.weight ? a.weight > b.weight : a.id < b.id;
                      });
            if (next.concepts.size() > params.mp) next.concepts.resize(params.mp);
            for (const auto& wc : next.concepts) visited.insert(wc.id);

            std::map<std::string, std::set<std::string>> kept_sources;
            for (const auto& wc : next.concepts) kept_sources[wc.id] = next.sources.at(wc.id);
            next.sources = std::move(kept_sources);

            frontier = std::move(next);
            depth = level;
        }

        auto scored = score_concept_set(o, frontier.concepts, frontier.sources, params);
        scored.depth = depth;
        scored.restart = restart;
        if (!have_best || scored.total > best.total) {
            have_best = true;
            best = std::move(scored);
        }
    }
    return best;
}

} // namespace xplain
