#pragma once

#include "fusionrank/fusion.hpp"
#include "fusionrank/judgments.hpp"
#include "fusionrank/metrics.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace fusionrank {

inline constexpr std::string_view kMethodFbr = "FBR";
inline constexpr std::string_view kMethodBaseline = "baseline";
inline constexpr std::string_view kScopeAll = "all";

/// One method's result list for one query within one scope ("all" or a network id).
struct Run {
    std::string scope;
    std::string method;
    const Query* query = nullptr;
    RankedList list;
};

/// FBR and baseline lists for every query, first over the whole corpus and then restricted
/// to each network in id order. Lists are cut at `depth`.
std::vector<Run> compute_runs(const RankingContext& ctx, std::span<const Query> queries, const FusionParams& params,
                              std::size_t depth, bool include_users = false);

struct ExperimentParams {
    FusionParams fusion;
    PrepareOptions prepare;
    bool include_users = false;
};

struct QueryResult {
    std::string scope;
    std::string method;
    std::string query_id;
    std::string query; // normalized text
    std::vector<double> ndcg; // NDCG at 1..k
};

struct ExperimentResult {
    std::size_t k = 0;
    std::size_t n_queries = 0;
    /// scope -> method -> mean curve over queries.
    std::map<std::string, std::map<std::string, NdcgCurve>> curves;
    std::vector<QueryResult> per_query; // sorted by (scope, method, query id)
    bool upstream_nonconverged = false;

    const NdcgCurve& curve(std::string_view scope, std::string_view method) const;
};

/// Evaluates FBR and the tf-idf baseline against `judgments` at positions 1..k. Means are
/// unweighted over queries. Throws InvalidExperiment when a query has no judged relevant
/// object.
ExperimentResult run_experiment(const Corpus& corpus, const DomainProfile& profile, std::span<const Query> queries,
                                const JudgmentSet& judgments, const ExperimentParams& params, std::size_t k);

ExperimentResult run_experiment(const RankingContext& ctx, std::span<const Query> queries,
                                const JudgmentSet& judgments, const ExperimentParams& params, std::size_t k);

/// method,k,mean_ndcg,n_queries over the whole corpus.
void write_summary_csv(const ExperimentResult& result, std::ostream& out);
/// network,method,k,mean_ndcg,n_queries for each network scope.
void write_per_network_csv(const ExperimentResult& result, std::ostream& out);
/// scope,method,query_id,query,k,ndcg.
void write_per_query_csv(const ExperimentResult& result, std::ostream& out);

/// Writes summary.csv, per_network.csv and per_query.csv into `dir`, replacing old files.
void write_report_files(const ExperimentResult& result, const std::filesystem::path& dir);

/// Plain-text FBR vs baseline table built from the CSVs in `dir`.
void render_report(const std::filesystem::path& dir, std::ostream& out);

} // namespace fusionrank
