#pragma once

#include "fusionrank/corpus.hpp"
#include "fusionrank/inverted_index.hpp"
#include "fusionrank/linkgraph.hpp"
#include "fusionrank/matching.hpp"
#include "fusionrank/query.hpp"
#include "fusionrank/ranked_list.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace fusionrank {

struct FusionParams {
    double w_text = 0.6;
    double w_rank = 0.25;
    double w_pop = 0.15;
    std::size_t k = 20;

    /// Throws std::invalid_argument on negative weights, all-zero weights or k == 0.
    void validate() const;
};

/// Raw component values of one candidate before normalization.
struct FusionCandidate {
    std::string object_id;
    double text = 0.0;
    double rank = 0.0;
    double pop = 0.0;
};

/// Min-max normalizes each component over `candidates` (a constant component becomes 0.5),
/// scores w_text*text + w_rank*rank + w_pop*pop and keeps the top k. The breakdown holds the
/// normalized components.
RankedList fuse_candidates(std::string query_id, std::span<const FusionCandidate> candidates,
                           const FusionParams& params);

using PartialRanks = std::map<std::string, RankVector>; // keyed by network id

/// Fused global rank of the objects with positive tf-idf for `q`. An object's rank
/// component comes from its own network's vector.
RankedList fused_rank(const Query& q, const InvertedIndex& index, const PartialRanks& partial_ranks,
                      const PopularityTable& pop, const FusionParams& params, const CandidateFilter& filter = {});

/// Everything query-independent that ranking needs, built once per corpus and profile.
struct RankingContext {
    InvertedIndex index;
    PartialRanks partial_ranks;
    InheritanceGraph inheritance;
    std::vector<InterLink> interlinks; // candidates with `valid` set
    PopularityTable popularity;
    // Partial rank and popularity by index document.
    std::vector<double> doc_rank;
    std::vector<double> doc_pop;

    bool all_converged() const;
};

struct PrepareOptions {
    RankParams rank;
    bool discover_interlinks = false; // add duplicate_of candidates found by title matching
};

RankingContext prepare_ranking(const Corpus& corpus, const DomainProfile& profile, const PrepareOptions& options = {});

/// Same ranking as the overload above, using the per-document tables of `ctx`.
RankedList fused_rank(const Query& q, const RankingContext& ctx, const FusionParams& params,
                      const CandidateFilter& filter = {});

} // namespace fusionrank
