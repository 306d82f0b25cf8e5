#include "fusionrank/fusion.hpp"

#include "fusionrank/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fusionrank {

void FusionParams::validate() const {
    for (double w : {w_text, w_rank, w_pop})
        if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("fusion weights must be finite and >= 0");
    if (!(w_text + w_rank + w_pop > 0.0)) throw std::invalid_argument("at least one fusion weight must be positive");
    if (k == 0) throw std::invalid_argument("k must be positive");
}

namespace {

/// Normalizes the three component columns in place, scores them and returns the row indices
/// of the top k. `id_of(i)` breaks ties.
template <class IdOf>
std::vector<std::size_t> top_rows(std::vector<double>& text, std::vector<double>& rank, std::vector<double>& pop,
                                  std::vector<double>& score, const FusionParams& params, IdOf id_of) {
    params.validate();
    const std::size_t n = text.size();
    text = normalize_scores(text, NormScheme::minmax);
    rank = normalize_scores(rank, NormScheme::minmax);
    pop = normalize_scores(pop, NormScheme::minmax);
    score.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        score[i] = params.w_text * text[i] + params.w_rank * rank[i] + params.w_pop * pop[i];

    std::vector<std::size_t> rows(n);
    std::iota(rows.begin(), rows.end(), 0);
    auto better = [&](std::size_t a, std::size_t b) {
        return score[a] != score[b] ? score[a] > score[b] : id_of(a) < id_of(b);
    };
    const std::size_t take = std::min(params.k, n);
    std::partial_sort(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(take), rows.end(), better);
    rows.resize(take);
    return rows;
}

struct Columns {
    std::vector<double> text, rank, pop, score;

    explicit Columns(std::size_t n) {
        text.reserve(n);
        rank.reserve(n);
        pop.reserve(n);
    }

    RankedEntry entry(std::size_t row, std::string id) const {
        return {std::move(id), score[row], {text[row], rank[row], pop[row]}};
    }
};

} // namespace

RankedList fuse_candidates(std::string query_id, std::span<const FusionCandidate> candidates,
                           const FusionParams& params) {
    Columns c(candidates.size());
    for (const auto& x : candidates) {
        c.text.push_back(x.text);
        c.rank.push_back(x.rank);
        c.pop.push_back(x.pop);
    }
    const auto rows = top_rows(c.text, c.rank, c.pop, c.score, params,
                               [&](std::size_t i) -> const std::string& { return candidates[i].object_id; });
    RankedList list;
    list.query_id = std::move(query_id);
    for (std::size_t row : rows) list.entries.push_back(c.entry(row, candidates[row].object_id));
    return list;
}

RankedList fused_rank(const Query& q, const RankingContext& ctx, const FusionParams& params,
                      const CandidateFilter& filter) {
    const auto scored = tfidf_candidates(q, ctx.index, filter);
    std::vector<bool> converged;
    for (const auto& net : ctx.index.networks()) {
        auto it = ctx.partial_ranks.find(net);
        converged.push_back(it == ctx.partial_ranks.end() || it->second.converged);
    }
    bool nonconverged = false;
    Columns c(scored.size());
    for (const auto& s : scored) {
        nonconverged = nonconverged || !converged[ctx.index.doc_network(s.doc)];
        c.text.push_back(s.score);
        c.rank.push_back(ctx.doc_rank[s.doc]);
        c.pop.push_back(ctx.doc_pop[s.doc]);
    }
    // Candidates arrive in document order, which is object-id order.
    const auto rows = top_rows(c.text, c.rank, c.pop, c.score, params, [](std::size_t i) { return i; });
    RankedList list;
    list.query_id = q.id;
    list.upstream_nonconverged = nonconverged;
    for (std::size_t row : rows) list.entries.push_back(c.entry(row, ctx.index.doc_id(scored[row].doc)));
    return list;
}

RankedList fused_rank(const Query& q, const InvertedIndex& index, const PartialRanks& partial_ranks,
                      const PopularityTable& pop, const FusionParams& params, const CandidateFilter& filter) {
    const auto scored = tfidf_candidates(q, index, filter);

    std::vector<const RankVector*> by_network;
    for (const auto& network : index.networks()) {
        auto it = partial_ranks.find(network);
        by_network.push_back(it == partial_ranks.end() ? nullptr : &it->second);
    }

    bool nonconverged = false;
    std::vector<FusionCandidate> candidates;
    candidates.reserve(scored.size());
    for (const auto& s : scored) {
        const std::string& id = index.doc_id(s.doc);
        const RankVector* ranks = by_network[index.doc_network(s.doc)];
        double rank = 0.0;
        if (ranks) {
            rank = ranks->score(id).value_or(0.0);
            nonconverged = nonconverged || !ranks->converged;
        }
        candidates.push_back({id, s.score, rank, pop.score(id)});
    }
    RankedList list = fuse_candidates(q.id, candidates, params);
    list.upstream_nonconverged = nonconverged;
    return list;
}

bool RankingContext::all_converged() const {
    return std::all_of(partial_ranks.begin(), partial_ranks.end(),
                       [](const auto& kv) { return kv.second.converged; });
}

RankingContext prepare_ranking(const Corpus& corpus, const DomainProfile& profile, const PrepareOptions& options) {
    profile.validate();
    RankingContext ctx;
    ctx.index = build_inverted_index(corpus);
    for (const auto& [id, network] : corpus.networks) {
        const IntraGraph graph = build_intra_graph(network);
        ctx.partial_ranks.emplace(id, partial_rank(graph, network_likes(corpus, network), options.rank));
    }

    std::vector<InterLink> candidates = corpus.interlink_candidates;
    if (options.discover_interlinks) {
        auto found = discover_interlinks(corpus, candidates);
        candidates.insert(candidates.end(), found.begin(), found.end());
    }
    ctx.inheritance = build_inheritance_graph(corpus, profile, candidates);
    ctx.interlinks = validate_interlinks(candidates, ctx.inheritance);
    ctx.popularity = popularity_table(ctx.interlinks, profile);

    ctx.doc_rank.assign(ctx.index.doc_count(), 0.0);
    ctx.doc_pop.assign(ctx.index.doc_count(), 0.0);
    for (DocIndex d = 0; d < ctx.index.doc_count(); ++d) {
        const std::string& id = ctx.index.doc_id(d);
        auto ranks = ctx.partial_ranks.find(ctx.index.networks()[ctx.index.doc_network(d)]);
        if (ranks != ctx.partial_ranks.end()) ctx.doc_rank[d] = ranks->second.score(id).value_or(0.0);
        ctx.doc_pop[d] = ctx.popularity.score(id);
    }
    return ctx;
}

} // namespace fusionrank
