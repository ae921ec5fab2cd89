#include "xplain/ontology.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>

#include "json.hpp"
#include "xplain/errors.hpp"

namespace xplain {
namespace {

// Depth-first search over is-a edges; on a back edge the current stack tail
// is the offending cycle.
void check_isa_acyclic(const std::vector<Concept>& concepts,
                       const std::vector<std::vector<std::size_t>>& isa_children) {
    const std::size_t n = concepts.size();
    std::vector<int> color(n, 0);
    std::vector<std::size_t> stack;
    for (std::size_t root = 0; root < n; ++root) {
        if (color[root] != 0) continue;
        std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
        color[root] = 1;
        stack.push_back(root);
        while (!frames.empty()) {
            auto& [node, child] = frames.back();
            if (child < isa_children[node].size()) {
                const std::size_t next = isa_children[node][child++];
                if (color[next] == 1) {
                    std::string cycle = concepts[next].id;
                    for (auto it = std::find(stack.begin(), stack.end(), next);
                         it != stack.end(); ++it) {
                        if (*it != next) cycle += " -> " + concepts[*it].id;
                    }
                    cycle += " -> " + concepts[next].id;
                    throw InputError("ontology: is-a cycle: " + cycle);
                }
                if (color[next] == 0) {
                    color[next] = 1;
                    stack.push_back(next);
                    frames.emplace_back(next, 0);
                }
            } else {
                color[node] = 2;
                stack.pop_back();
                frames.pop_back();
            }
        }
    }
}

} // namespace

Ontology::Ontology(std::vector<Concept> concepts, std::vector<OntologyEdge> edges)
    : concepts_(std::move(concepts)), edges_(std::move(edges)) {
    const std::size_t n = concepts_.size();
    if (n == 0) throw InputError("ontology: no concepts");
    for (std::size_t i = 0; i < n; ++i) index_.emplace_back(concepts_[i].id, i);
    std::sort(index_.begin(), index_.end());
    for (std::size_t i = 1; i < index_.size(); ++i) {
        if (index_[i].first == index_[i - 1].first) {
            throw InputError("ontology: duplicate concept id '" + index_[i].first + "'");
        }
    }

    out_.resize(n);
    neighbors_.resize(n);
    std::vector<std::vector<std::size_t>> isa_children(n);
    for (const auto& e : edges_) {
        if (!has_concept(e.from) || !has_concept(e.to)) {
            throw InputError("ontology: edge '" + e.from + "' -> '" + e.to +
                             "' references an undeclared concept");
        }
        if (!(e.weight > 0.0 && e.weight <= 1.0)) {
            throw InputError("ontology: edge '" + e.from + "' -> '" + e.to +
                             "' has weight outside (0, 1]");
        }
        const std::size_t a = index_of(e.from), b = index_of(e.to);
        if (a == b) {
            throw InputError("ontology: self-loop on concept '" + e.from + "'");
        }
        out_[a].push_back(e);
        neighbors_[a].push_back(b);
        neighbors_[b].push_back(a);
        if (e.relation == "is-a") isa_children[a].push_back(b);
    }
    for (auto& ns : neighbors_) {
        std::sort(ns.begin(), ns.end());
        ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    }

    check_isa_acyclic(concepts_, isa_children);

    // ancestors_[i] is the reflexive-transitive is-a closure of concept i,
    // filled by upward depth-first walks (the graph is small and acyclic).
    ancestors_.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> todo{i};
        while (!todo.empty()) {
            const std::size_t cur = todo.back();
            todo.pop_back();
            if (ancestors_[i][cur]) continue;
            ancestors_[i][cur] = true;
            for (std::size_t up : isa_children[cur]) todo.push_back(up);
        }
    }
}

bool Ontology::has_concept(const std::string& id) const {
    const auto it = std::lower_bound(index_.begin(), index_.end(),
                                     std::make_pair(id, std::size_t{0}));
    return it != index_.end() && it->first == id;
}

std::size_t Ontology::index_of(const std::string& id) const {
    const auto it = std::lower_bound(index_.begin(), index_.end(),
                                     std::make_pair(id, std::size_t{0}));
    if (it == index_.end() || it->first != id) {
        throw InputError("ontology: unknown concept '" + id + "'");
    }
    return it->second;
}

const Concept& Ontology::concept_by_id(const std::string& id) const {
    return concepts_[index_of(id)];
}

const std::vector<OntologyEdge>& Ontology::out_edges(const std::string& id) const {
    return out_[index_of(id)];
}

bool Ontology::index_subsumes(std::size_t general, std::size_t specific) const {
    return ancestors_[specific][general];
}

const std::vector<std::size_t>& Ontology::undirected_neighbors(std::size_t idx) const {
    return neighbors_[idx];
}

Ontology load_ontology(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open ontology file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("ontology file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("concepts") || !j.contains("edges")) {
        throw InputError("ontology file '" + path + "' needs top-level 'concepts' and 'edges'");
    }
    std::vector<Concept> concepts;
    for (const auto& c : j.at("concepts")) {
        if (!c.contains("id") || !c.at("id").is_string()) {
            throw InputError("ontology: concept entry without a string 'id'");
        }
        Concept out;
        out.id = c.at("id").get<std::string>();
        out.label = c.value("label", out.id);
        out.covering = c.value("covering", false);
        concepts.push_back(std::move(out));
    }
    std::vector<OntologyEdge> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.contains("from") || !e.contains("to") || !e.contains("relation")) {
            throw InputError("ontology: edge entry needs 'from', 'to', and 'relation'");
        }
        OntologyEdge out;
        out.from = e.at("from").get<std::string>();
        out.to = e.at("to").get<std::string>();
        out.relation = e.at("relation").get<std::string>();
        out.weight = e.value("weight", 1.0);
        edges.push_back(std::move(out));
    }
    return Ontology(std::move(concepts), std::move(edges));
}

std::optional<int> concept_distance(const Ontology& o, const std::string& c1,
                                    const std::string& c2) {
    const std::size_t a = o.index_of(c1), b = o.index_of(c2);
    if (a == b) return 0;
    std::vector<int> dist(o.size(), -1);
    std::deque<std::size_t> queue{a};
    dist[a] = 0;
    while (!queue.empty()) {
        const std::size_t cur = queue.front();
        queue.pop_front();
        for (std::size_t nb : o.undirected_neighbors(cur)) {
            if (dist[nb] != -1) continue;
            dist[nb] = dist[cur] + 1;
            if (nb == b) return dist[nb];
            queue.push_back(nb);
        }
    }
    return std::nullopt;
}

bool subsumes(const Ontology& o, const std::string& general, const std::string& specific) {
    return o.index_subsumes(o.index_of(general), o.index_of(specific));
}

std::vector<std::string> matching_successors(const Ontology& o,
                                             const std::vector<std::string>& frontier,
                                             const std::set<std::string>& visited) {
    if (frontier.empty()) throw InputError("matching requires a nonempty frontier");
    std::map<std::string, std::set<std::string>> sources;
    for (const auto& f : frontier) {
        for (const auto& e : o.out_edges(f)) sources[e.to].insert(f);
    }
    std::vector<std::string> out;
    for (const auto& [target, srcs] : sources) {
        if (srcs.size() >= 2 && !visited.count(target)) out.push_back(target);
    }
    return out;
}

std::vector<std::string> concept_difference(const Ontology& o, const std::string& positive,
                                            const std::string& negative) {
    const std::size_t p = o.index_of(positive), n = o.index_of(negative);
    std::vector<std::size_t> candidates;
    for (std::size_t c = 0; c < o.size(); ++c) {
        if (o.concepts()[c].covering) continue;
        if (o.index_subsumes(p, c) && !o.index_subsumes(n, c)) candidates.push_back(c);
    }
    std::vector<std::string> out;
    for (std::size_t c : candidates) {
        const bool maximal = std::none_of(candidates.begin(), candidates.end(),
                                          [&](std::size_t d) {
                                              return d != c && o.index_subsumes(d, c);
                                          });
        if (maximal) out.push_back(o.concepts()[c].id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace xplain
