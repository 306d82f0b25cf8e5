#pragma once

#include "fusionrank/corpus.hpp"
#include "fusionrank/experiment.hpp"
#include "fusionrank/judgments.hpp"
#include "fusionrank/matching.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace fusionrank {

struct NetworkSize {
    std::size_t n_users = 0;
    std::size_t n_music = 0;

    friend bool operator==(const NetworkSize&, const NetworkSize&) = default;
};

/// Full-size network sizes: a large and a small network.
inline constexpr NetworkSize kLargeNetworkFull{18576, 39271};
inline constexpr NetworkSize kSmallNetworkFull{2464, 7978};

/// Parameters of the synthetic multi-network music corpus.
struct GenSpec {
    std::uint64_t seed = 42;
    std::vector<NetworkSize> networks = {{1858, 3927}, {246, 798}};
    std::size_t n_categories = 10;
    /// Fraction of the second network's songs that are copies of first-network songs.
    double duplicate_rate = 0.15;

    // Graph structure.
    std::size_t friends_per_user = 3; // preferential-attachment edges added per user
    std::size_t max_friends = 150;    // degree cap of the growth process
    std::size_t songs_per_singer = 10;
    std::size_t songs_per_album = 8;
    std::size_t similar_per_song = 2;

    // Feedback. Expected likes of a song are n_users * like_rate * exp(like_sigma * u) where
    // u mixes latent quality and noise with weight `popularity_coupling`.
    double like_rate = 0.004;
    double like_sigma = 1.0;
    double popularity_coupling = 0.8;

    /// Songs uploaded with only a title; they fail the default music profile.
    double sparse_metadata_rate = 0.08;

    std::size_t queries_per_category = 10;
    /// Probability that a query's second term is a generic word shared by all categories.
    double ambiguous_query_rate = 0.5;

    /// Full-size networks multiplied by `scale` (0.1 gives the defaults).
    static GenSpec scaled(double scale, std::uint64_t seed = 42);

    /// Throws InvalidSpec on non-positive counts or rates outside [0, 1].
    void validate() const;
};

/// Reads a JSON object whose keys match the GenSpec fields; absent keys keep the defaults
/// of `base`. `networks` is a list of [n_users, n_music] pairs.
GenSpec load_gen_spec(const std::filesystem::path& path, GenSpec base = {});

/// Category labels in generation order (at most ten are built in).
std::vector<std::string> default_categories(std::size_t n);

/// Intended relevance of songs to the generated queries, standing in for human raters.
struct GroundTruth {
    std::vector<std::string> queries; // raw query text in generation order
    JudgmentSet levels;               // (query, song) -> content and interest levels
};

struct GeneratedData {
    Corpus corpus;
    GroundTruth truth;
};

GeneratedData generate_corpus(const GenSpec& spec);

/// Judges the union of the first `depth` entries of every run per query. Levels come from
/// the ground truth; pooled objects absent from it are judged (Low, Low).
JudgmentSet generate_judgments(const GroundTruth& truth, std::span<const Run> pool, std::size_t depth = 20);

/// Writes corpus.jsonl, profile.jsonl, queries.txt and ground_truth.tsv into `dir`.
void write_generated(const GeneratedData& data, const DomainProfile& profile, const std::filesystem::path& dir);

/// Pools FBR and baseline lists to depth 20, judges the pool from `truth` and evaluates.
/// The judgments used are stored in `judgments_out` when given.
ExperimentResult evaluate_against_truth(const RankingContext& ctx, std::span<const Query> queries,
                                        const JudgmentSet& truth, const ExperimentParams& params, std::size_t k,
                                        JudgmentSet* judgments_out = nullptr);

} // namespace fusionrank
