#pragma once

#include "fusionrank/inverted_index.hpp"
#include "fusionrank/query.hpp"
#include "fusionrank/ranked_list.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace fusionrank {

/// ln((N + 1) / (df + 1)) + 1, always positive.
double idf(const InvertedIndex& index, std::string_view term);

/// Sum over query terms (with repetition) of tf * idf, tf summed over all indexed fields.
double tfidf_score(const Query& q, std::string_view object_id, const InvertedIndex& index);

struct ScoredDoc {
    DocIndex doc;
    double score;
};

/// Every document passing `filter` with a positive tf-idf score, in document order.
std::vector<ScoredDoc> tfidf_candidates(const Query& q, const InvertedIndex& index, const CandidateFilter& filter = {});

/// Top-k by tf-idf, ties by ascending object id. Components carry the raw score as `text`.
RankedList baseline_rank(const Query& q, const InvertedIndex& index, std::size_t k, const CandidateFilter& filter = {});

} // namespace fusionrank
