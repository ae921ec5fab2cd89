#include "xplain/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "xplain/errors.hpp"

namespace xplain {
namespace {

constexpr double kRankMergeEps = 1e-9;

std::vector<WeightedConcept> sorted_desc(std::vector<WeightedConcept> v) {
    std::sort(v.begin(), v.end(), [](const WeightedConcept& a, const WeightedConcept& b) {
        return a.weight != b.weight ? a.weight > b.weight : a.id < b.id;
    });
    return v;
}

// Most frequent rank; on a tied count the numerically lower (better) rank.
int majority_rank(const std::vector<int>& ranks) {
    std::map<int, std::size_t> counts;
    for (int r : ranks) ++counts[r];
    int best = ranks.front();
    std::size_t best_count = 0;
    for (const auto& [rank, count] : counts) {
        if (count > best_count) {
            best = rank;
            best_count = count;
        }
    }
    return best;
}

} // namespace

double importance(const Ontology& o, const std::string& c_d,
                  const std::vector<WeightedConcept>& sigma_out_pos, ImportanceMode mode) {
    if (sigma_out_pos.empty()) {
        throw InputError("importance needs a nonempty positive concept set");
    }
    double sum = 0.0;
    for (const auto& wc : sigma_out_pos) {
        const auto d = concept_distance(o, c_d, wc.id);
        if (mode == ImportanceMode::Proximity) {
            if (d) sum += wc.weight / (1.0 + static_cast<double>(*d));
        } else {
            if (!d) {
                throw StageError("contraction", "literal importance undefined: '" + c_d +
                                                    "' is disconnected from '" + wc.id + "'");
            }
            sum += wc.weight * static_cast<double>(*d);
        }
    }
    return sum / static_cast<double>(sigma_out_pos.size());
}

ContractionResult contract(const Ontology& o, const std::vector<WeightedConcept>& sigma_out_pos,
                           const std::vector<WeightedConcept>& sigma_out_neg, double delta,
                           ImportanceMode mode) {
    if (sigma_out_pos.empty() || sigma_out_neg.empty()) {
        throw InputError("contraction needs nonempty positive and negative concept sets");
    }
    if (delta < 0.0) throw InputError("contraction threshold delta must be nonnegative");

    std::set<std::string> pool;
    std::map<std::string, std::set<std::string>> produced_by;
    for (const auto& cp : sigma_out_pos) {
        for (const auto& cn : sigma_out_neg) {
            for (const auto& cd : concept_difference(o, cp.id, cn.id)) {
                pool.insert(cd);
                if (cd != cp.id) produced_by[cd].insert(cn.id);
            }
        }
    }

    // A difference concept subsumed by any negative would contradict the
    // contrastive side; drop those, then keep only subsumption-maximal ones.
    std::vector<std::string> clear;
    for (const auto& cd : pool) {
        const bool shadowed =
            std::any_of(sigma_out_neg.begin(), sigma_out_neg.end(),
                        [&](const WeightedConcept& cn) { return subsumes(o, cn.id, cd); });
        if (!shadowed) clear.push_back(cd);
    }
    std::vector<std::string> maximal;
    for (const auto& cd : clear) {
        const bool dominated = std::any_of(clear.begin(), clear.end(), [&](const std::string& g) {
            return g != cd && subsumes(o, g, cd);
        });
        if (!dominated) maximal.push_back(cd);
    }

    ContractionResult result;
    for (const auto& cd : maximal) {
        const double imp = importance(o, cd, sigma_out_pos, mode);
        if (imp >= delta) result.diff.push_back({cd, imp});
    }
    result.diff = sorted_desc(std::move(result.diff));
    for (const auto& wc : result.diff) {
        const auto it = produced_by.find(wc.id);
        if (it != produced_by.end()) result.produced_by[wc.id] = it->second;
    }
    return result;
}

RankedExplanation rank_groups(const Ontology& o, const std::vector<WeightedConcept>& diff,
                              const std::map<std::string, std::set<std::string>>& produced_by,
                              const std::vector<WeightedConcept>& sigma_out_neg, int sigma) {
    if (diff.empty()) throw InputError("ranking needs a nonempty uniform concept set");
    if (sigma < 1) throw InputError("ranking radius sigma must be at least 1");

    const auto uniform = sorted_desc(diff);
    std::map<std::string, int> rank_of;
    int rank = 0;
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& wc : uniform) {
        if (prev - wc.weight > kRankMergeEps) ++rank;
        rank_of[wc.id] = rank;
        prev = wc.weight;
    }
    const int max_rank = rank;

    std::map<std::string, std::set<std::string>> produced;
    for (const auto& [cd, negs] : produced_by) {
        for (const auto& cn : negs) produced[cn].insert(cd);
    }

    std::map<std::string, std::pair<int, int>> neg_rank;
    for (const auto& cn : sigma_out_neg) {
        const auto it = produced.find(cn.id);
        if (it != produced.end()) {
            std::vector<int> ranks;
            for (const auto& cd : it->second) ranks.push_back(rank_of.at(cd));
            neg_rank[cn.id] = {majority_rank(ranks), 2};
            continue;
        }
        int dmin = -1;
        for (const auto& wc : uniform) {
            if (const auto d = concept_distance(o, cn.id, wc.id)) {
                if (dmin < 0 || *d < dmin) dmin = *d;
            }
        }
        if (dmin >= 0 && dmin < sigma) {
            std::vector<int> ranks;
            for (const auto& wc : uniform) {
                const auto d = concept_distance(o, cn.id, wc.id);
                if (d && *d == dmin) ranks.push_back(rank_of.at(wc.id));
            }
            neg_rank[cn.id] = {majority_rank(ranks), 3};
        } else {
            neg_rank[cn.id] = {max_rank + 1, 4};
        }
    }

    std::map<int, RankedRow> rows;
    for (const auto& wc : uniform) {
        auto& row = rows[rank_of.at(wc.id)];
        row.rank = rank_of.at(wc.id);
        row.uniform.push_back({wc.id, wc.weight, 1});
    }
    for (const auto& cn : sorted_desc(sigma_out_neg)) {
        const auto& [r, step] = neg_rank.at(cn.id);
        auto& row = rows[r];
        row.rank = r;
        row.contrastive.push_back({cn.id, cn.weight, step});
    }

    RankedExplanation out;
    for (auto& [r, row] : rows) out.rows.push_back(std::move(row));
    return out;
}

} // namespace xplain
