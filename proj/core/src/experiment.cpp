#include "fusionrank/experiment.hpp"

#include "fusionrank/errors.hpp"
#include "fusionrank/text.hpp"
#include "fusionrank/tfidf.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fusionrank {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cols;
    std::istringstream in(line);
    for (std::string col; std::getline(in, col, ',');) cols.push_back(col);
    return cols;
}

} // namespace

std::vector<Run> compute_runs(const RankingContext& ctx, std::span<const Query> queries, const FusionParams& params,
                              std::size_t depth, bool include_users) {
    FusionParams cut = params;
    cut.k = depth;

    std::vector<std::string> scopes{std::string(kScopeAll)};
    for (const auto& net : ctx.index.networks()) scopes.push_back(net);

    std::vector<Run> runs;
    runs.reserve(scopes.size() * queries.size() * 2);
    for (const auto& scope : scopes) {
        CandidateFilter filter;
        filter.include_users = include_users;
        if (scope != kScopeAll) filter.network = scope;
        for (const auto& q : queries) {
            runs.push_back({scope, std::string(kMethodFbr), &q, fused_rank(q, ctx, cut, filter)});
            runs.push_back({scope, std::string(kMethodBaseline), &q, baseline_rank(q, ctx.index, depth, filter)});
        }
    }
    return runs;
}

const NdcgCurve& ExperimentResult::curve(std::string_view scope, std::string_view method) const {
    auto s = curves.find(std::string(scope));
    if (s == curves.end()) throw std::out_of_range("no scope '" + std::string(scope) + "'");
    auto m = s->second.find(std::string(method));
    if (m == s->second.end()) throw std::out_of_range("no method '" + std::string(method) + "'");
    return m->second;
}

ExperimentResult run_experiment(const RankingContext& ctx, std::span<const Query> queries,
                                const JudgmentSet& judgments, const ExperimentParams& params, std::size_t k) {
    if (k == 0) throw InvalidExperiment("k must be positive");
    for (const auto& q : queries)
        if (!judgments.has_relevant(q.id))
            throw InvalidExperiment("query '" + q.raw + "' has no judged relevant object");

    ExperimentResult result;
    result.k = k;
    result.n_queries = queries.size();

    const auto runs = compute_runs(ctx, queries, params.fusion, std::max(k, params.fusion.k), params.include_users);
    std::vector<int> grades;
    for (const auto& run : runs) {
        grades.clear();
        for (const auto& e : run.list.entries) grades.push_back(judgments.grade(run.query->id, e.object_id).value);
        result.upstream_nonconverged = result.upstream_nonconverged || run.list.upstream_nonconverged;
        result.per_query.push_back({run.scope, run.method, run.query->id, join(run.query->terms, " "),
                                    ndcg_curve(grades, k)});
    }
    std::sort(result.per_query.begin(), result.per_query.end(), [](const QueryResult& a, const QueryResult& b) {
        return std::tie(a.scope, a.method, a.query_id) < std::tie(b.scope, b.method, b.query_id);
    });

    // Reduce in the sorted order so the sums do not depend on evaluation order.
    for (const auto& row : result.per_query) {
        auto& curve = result.curves[row.scope][row.method];
        curve.method = row.method;
        curve.values.resize(k, 0.0);
        for (std::size_t i = 0; i < k; ++i) curve.values[i] += row.ndcg[i];
    }
    const double n = static_cast<double>(std::max<std::size_t>(queries.size(), 1));
    for (auto& [_, methods] : result.curves)
        for (auto& [__, curve] : methods)
            for (auto& v : curve.values) v /= n;
    return result;
}

ExperimentResult run_experiment(const Corpus& corpus, const DomainProfile& profile, std::span<const Query> queries,
                                const JudgmentSet& judgments, const ExperimentParams& params, std::size_t k) {
    const RankingContext ctx = prepare_ranking(corpus, profile, params.prepare);
    return run_experiment(ctx, queries, judgments, params, k);
}

void write_summary_csv(const ExperimentResult& result, std::ostream& out) {
    out << "method,k,mean_ndcg,n_queries\n";
    auto scope = result.curves.find(std::string(kScopeAll));
    if (scope == result.curves.end()) return;
    for (const auto& [method, curve] : scope->second)
        for (std::size_t i = 0; i < curve.values.size(); ++i)
            out << method << ',' << i + 1 << ',' << format_double(curve.values[i]) << ',' << result.n_queries << '\n';
}

void write_per_network_csv(const ExperimentResult& result, std::ostream& out) {
    out << "network,method,k,mean_ndcg,n_queries\n";
    for (const auto& [scope, methods] : result.curves) {
        if (scope == kScopeAll) continue;
        for (const auto& [method, curve] : methods)
            for (std::size_t i = 0; i < curve.values.size(); ++i)
                out << scope << ',' << method << ',' << i + 1 << ',' << format_double(curve.values[i]) << ','
                    << result.n_queries << '\n';
    }
}

void write_per_query_csv(const ExperimentResult& result, std::ostream& out) {
    out << "scope,method,query_id,query,k,ndcg\n";
    for (const auto& row : result.per_query)
        for (std::size_t i = 0; i < row.ndcg.size(); ++i)
            out << row.scope << ',' << row.method << ',' << row.query_id << ',' << row.query << ',' << i + 1 << ','
                << format_double(row.ndcg[i]) << '\n';
}

void write_report_files(const ExperimentResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto write = [&](const char* name, auto&& writer) {
        std::ofstream out(dir / name, std::ios::trunc);
        if (!out) throw DataError("cannot write '" + (dir / name).string() + "'");
        writer(result, out);
    };
    write("summary.csv", write_summary_csv);
    write("per_network.csv", write_per_network_csv);
    write("per_query.csv", write_per_query_csv);
}

void render_report(const std::filesystem::path& dir, std::ostream& out) {
    // scope -> k -> method -> mean
    std::map<std::string, std::map<int, std::map<std::string, double>>> table;
    std::map<std::string, std::string> n_queries;

    auto read = [&](const std::filesystem::path& path, bool has_scope) {
        std::ifstream in(path);
        if (!in) {
            if (has_scope) return; // per-network table is optional
            throw DataError("cannot open '" + path.string() + "'");
        }
        std::string line;
        std::getline(in, line); // header
        std::size_t line_no = 1;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            auto cols = split_csv_line(line);
            const std::size_t expected = has_scope ? 5 : 4;
            if (cols.size() != expected) throw MalformedRecord(line_no, "unexpected column count in " + path.string());
            const std::string scope = has_scope ? cols[0] : std::string(kScopeAll);
            const std::size_t o = has_scope ? 1 : 0;
            try {
                table[scope][std::stoi(cols[o + 1])][cols[o]] = std::stod(cols[o + 2]);
            } catch (const std::exception&) {
                throw MalformedRecord(line_no, "non-numeric value in " + path.string());
            }
            n_queries[scope] = cols[o + 3];
        }
    };
    read(dir / "summary.csv", false);
    read(dir / "per_network.csv", true);

    char buf[128];
    for (const auto& [scope, rows] : table) {
        out << (scope == kScopeAll ? std::string("All networks") : "Network " + scope) << " (" << n_queries[scope]
            << " queries)\n";
        std::snprintf(buf, sizeof buf, "%4s  %10s  %10s  %10s\n", "k", "FBR", "baseline", "diff");
        out << buf;
        double total_diff = 0.0;
        for (const auto& [k, methods] : rows) {
            auto get = [&](std::string_view m) {
                auto it = methods.find(std::string(m));
                return it == methods.end() ? 0.0 : it->second;
            };
            const double fbr = get(kMethodFbr);
            const double base = get(kMethodBaseline);
            total_diff += fbr - base;
            std::snprintf(buf, sizeof buf, "%4d  %10.4f  %10.4f  %+10.4f\n", k, fbr, base, fbr - base);
            out << buf;
        }
        if (!rows.empty()) {
            std::snprintf(buf, sizeof buf, "mean improvement over k: %+.4f\n\n",
                          total_diff / static_cast<double>(rows.size()));
            out << buf;
        }
    }
}

} // namespace fusionrank
