#include "fusionrank/tfidf.hpp"

#include <algorithm>
#include <cmath>

namespace fusionrank {

namespace {

bool passes(const InvertedIndex& index, DocIndex doc, const CandidateFilter& filter,
            std::optional<std::uint32_t> network) {
    if (!filter.include_users && index.doc_kind(doc) == ObjectKind::user) return false;
    if (network && index.doc_network(doc) != *network) return false;
    return true;
}

} // namespace

double idf(const InvertedIndex& index, std::string_view term) {
    const double n = static_cast<double>(index.doc_count());
    const double df = static_cast<double>(index.document_frequency(term));
    return std::log((n + 1.0) / (df + 1.0)) + 1.0;
}

double tfidf_score(const Query& q, std::string_view object_id, const InvertedIndex& index) {
    const auto doc = index.find_doc(object_id);
    if (!doc) return 0.0;
    double score = 0.0;
    for (const auto& term : q.terms) {
        const auto postings = index.postings(term);
        if (postings.empty()) continue;
        const double w = idf(index, term);
        auto [lo, hi] = std::equal_range(postings.begin(), postings.end(), Posting{*doc, Field::title, 0},
                                         [](const Posting& a, const Posting& b) { return a.doc < b.doc; });
        std::uint32_t tf = 0;
        for (auto it = lo; it != hi; ++it) tf += it->tf;
        score += static_cast<double>(tf) * w;
    }
    return score;
}

std::vector<ScoredDoc> tfidf_candidates(const Query& q, const InvertedIndex& index, const CandidateFilter& filter) {
    std::optional<std::uint32_t> network;
    if (filter.network) {
        network = index.network_index(*filter.network);
        if (!network) return {};
    }

    std::vector<double> acc(index.doc_count(), 0.0);
    std::vector<DocIndex> touched;
    for (const auto& term : q.terms) {
        const auto postings = index.postings(term);
        if (postings.empty()) continue;
        const double w = idf(index, term);
        // Field tfs are summed before weighting so equal totals give bit-equal scores.
        for (std::size_t i = 0; i < postings.size();) {
            const DocIndex doc = postings[i].doc;
            std::uint32_t tf = 0;
            for (; i < postings.size() && postings[i].doc == doc; ++i) tf += postings[i].tf;
            if (acc[doc] == 0.0) touched.push_back(doc);
            acc[doc] += static_cast<double>(tf) * w;
        }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

    std::vector<ScoredDoc> out;
    out.reserve(touched.size());
    for (DocIndex doc : touched)
        if (acc[doc] > 0.0 && passes(index, doc, filter, network)) out.push_back({doc, acc[doc]});
    return out;
}

RankedList baseline_rank(const Query& q, const InvertedIndex& index, std::size_t k, const CandidateFilter& filter) {
    auto scored = tfidf_candidates(q, index, filter);
    // Document order equals object-id order, so the doc index breaks ties.
    auto better = [](const ScoredDoc& a, const ScoredDoc& b) {
        return a.score != b.score ? a.score > b.score : a.doc < b.doc;
    };
    const std::size_t take = std::min(k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take), scored.end(), better);

    RankedList list;
    list.query_id = q.id;
    list.entries.reserve(take);
    for (std::size_t i = 0; i < take; ++i)
        list.entries.push_back({index.doc_id(scored[i].doc), scored[i].score, {scored[i].score, 0.0, 0.0}});
    return list;
}

} // namespace fusionrank
