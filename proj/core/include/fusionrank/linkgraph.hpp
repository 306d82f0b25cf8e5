#pragma once

#include "fusionrank/corpus.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fusionrank {

using NodeIndex = std::uint32_t;

/// Undirected intra-type link graph of one network. Node indices follow ascending object id;
/// every undirected edge appears in the neighbor lists of both endpoints.
class IntraGraph {
public:
    const std::string& network_id() const { return network_id_; }
    std::size_t node_count() const { return ids_.size(); }
    std::size_t arc_count() const;

    const std::string& id(NodeIndex node) const { return ids_[node]; }
    std::span<const std::string> ids() const { return ids_; }
    std::optional<NodeIndex> find(std::string_view object_id) const;

    std::span<const NodeIndex> neighbors(NodeIndex node) const { return adjacency_[node]; }
    std::size_t degree(NodeIndex node) const { return adjacency_[node].size(); }

    friend IntraGraph build_intra_graph(const SocialNetwork& network);

    /// Graph over nodes 0..n-1 named "0".."n-1" (zero-padded so ids sort numerically).
    /// Edges are undirected pairs; used by tests and benchmarks.
    static IntraGraph from_edges(std::size_t n, std::span<const std::pair<NodeIndex, NodeIndex>> edges);

private:
    std::string network_id_;
    std::vector<std::string> ids_;
    std::unordered_map<std::string, NodeIndex> lookup_;
    std::vector<std::vector<NodeIndex>> adjacency_;
};

/// Edges of different relation kinds between the same pair each add an arc, so a song that
/// is both sung_by and similar_to a node links to it twice.
IntraGraph build_intra_graph(const SocialNetwork& network);

struct RankParams {
    double damping = 0.85;
    double tolerance = 1e-9; // L1 change between iterates
    int max_iterations = 200;
    double feedback_smoothing = 1.0;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

struct RankVector {
    std::string network_id;
    std::vector<std::string> ids; // same order as the graph nodes
    std::vector<double> scores;
    bool converged = false;
    int iterations = 0;

    std::size_t size() const { return scores.size(); }
    /// Score of `object_id`, or nullopt when it is not a member.
    std::optional<double> score(std::string_view object_id) const;

private:
    friend RankVector make_rank_vector(std::string network_id, std::vector<std::string> ids, std::vector<double> scores);
    void build_lookup();
    std::unordered_map<std::string, std::size_t> lookup_;
};

RankVector make_rank_vector(std::string network_id, std::vector<std::string> ids, std::vector<double> scores);

using IterationObserver = std::function<void(int iteration, std::span<const double> iterate)>;

/// Feedback-personalized PageRank on one network graph.
///
/// Iterates x <- d * W * x + (1 - d) * p where W is the random-walk matrix of the undirected
/// graph and p_i is proportional to feedback_smoothing + likes_i. Mass held by nodes without
/// neighbors is sent back along p, so every iterate sums to one. Stops when the L1 change
/// falls to `tolerance`; when max_iterations runs out first, the last iterate is returned with
/// converged == false. Objects missing from `likes` count as zero likes.
RankVector partial_rank(const IntraGraph& graph, const std::map<std::string, std::int64_t>& likes,
                        const RankParams& params = {}, const IterationObserver& observer = {});

/// Like counts of every member of `network`.
std::map<std::string, std::int64_t> network_likes(const Corpus& corpus, const SocialNetwork& network);

enum class NormScheme { minmax, zscore_clipped, none };

std::optional<NormScheme> parse_norm_scheme(std::string_view name);

/// Maps scores into [0, 1]. minmax sends min to 0 and max to 1; zscore_clipped clips z-scores
/// to [-3, 3] and rescales linearly. Constant inputs map to 0.5 under both. `none` copies.
std::vector<double> normalize_scores(std::span<const double> scores, NormScheme scheme);

RankVector normalize_ranks(const RankVector& vec, NormScheme scheme);

/// Tab-separated (object id, score, converged) rows.
void write_rank_dump(const RankVector& vec, std::ostream& out);

} // namespace fusionrank
