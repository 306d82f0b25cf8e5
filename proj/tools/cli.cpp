#include "cli.hpp"

#include <fusionrank/errors.hpp>
#include <fusionrank/experiment.hpp>
#include <fusionrank/fusion.hpp>
#include <fusionrank/inverted_index.hpp>
#include <fusionrank/judgments.hpp>
#include <fusionrank/synthgen.hpp>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>

namespace fusionrank::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
}

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
    auto logger = std::make_shared<spdlog::logger>("fusionrank", sink);
    logger->set_pattern("[%l] %v");
    logger->set_level(spdlog::level::warn);
    if (const char* level = std::getenv("FUSIONRANK_LOG")) logger->set_level(spdlog::level::from_str(level));
    return logger;
}

/// Ranking knobs shared by `rank` and `evaluate`.
struct RankingOptions {
    std::string profile_path;
    FusionParams fusion;
    RankParams rank;
    bool discover = false;
    bool include_users = false;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--profile", profile_path, "Domain profile file (built-in music profile when omitted)")
            ->check(CLI::ExistingFile);
        cmd.add_option("--w-text", fusion.w_text, "Weight of normalized tf-idf relevance")->capture_default_str();
        cmd.add_option("--w-rank", fusion.w_rank, "Weight of normalized partial rank")->capture_default_str();
        cmd.add_option("--w-pop", fusion.w_pop, "Weight of normalized popularity factor")->capture_default_str();
        cmd.add_option("--damping", rank.damping, "Link-analysis damping factor in (0, 1)")->capture_default_str();
        cmd.add_option("--tolerance", rank.tolerance, "L1 convergence tolerance")->capture_default_str();
        cmd.add_option("--max-iterations", rank.max_iterations, "Power-iteration cap")->capture_default_str();
        cmd.add_option("--feedback-smoothing", rank.feedback_smoothing, "Added to every like count")
            ->capture_default_str();
        cmd.add_flag("--discover-interlinks", discover, "Add duplicate_of candidates found by title matching");
        cmd.add_flag("--include-users", include_users, "Allow user objects in result lists");
    }

    void check() const {
        try {
            fusion.validate();
            rank.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }

    DomainProfile profile() const { return profile_path.empty() ? default_music_profile() : load_profile(profile_path); }

    PrepareOptions prepare() const { return {rank, discover}; }
};

Corpus read_corpus(const std::string& path, spdlog::logger& log) {
    std::vector<std::string> warnings;
    Corpus corpus = load_corpus(std::filesystem::path(path), &warnings);
    for (const auto& w : warnings) log.warn("{}", w);
    return corpus;
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    auto log = make_logger(err);

    CLI::App app{"Fusion-based ranking of web objects across social networks"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    // generate
    std::uint64_t seed = 42;
    double scale = 0.1;
    std::string spec_path;
    std::string out_dir;
    auto* generate = app.add_subcommand("generate", "Write a seeded synthetic corpus, profile, queries and ground truth");
    generate->add_option("--seed", seed, "Random seed")->capture_default_str();
    generate->add_option("--scale", scale, "Network sizes relative to the reference crawl")->capture_default_str();
    generate->add_option("--spec", spec_path, "JSON generator spec (overrides --scale sizes)")->check(CLI::ExistingFile);
    generate->add_option("--out", out_dir, "Output directory")->required();

    // validate
    std::string corpus_path;
    std::string validate_profile;
    auto* validate = app.add_subcommand("validate", "Check a corpus (and optionally a profile) for invariant violations");
    validate->add_option("--corpus", corpus_path, "Corpus file")->required()->check(CLI::ExistingFile);
    validate->add_option("--profile", validate_profile, "Domain profile file")->check(CLI::ExistingFile);

    // index
    std::string index_out;
    auto* index_cmd = app.add_subcommand("index", "Build the inverted index and print statistics");
    index_cmd->add_option("--corpus", corpus_path, "Corpus file")->required()->check(CLI::ExistingFile);
    index_cmd->add_option("--out", index_out, "Write a tab-separated posting dump here");

    // rank
    RankingOptions rank_opts;
    std::string query_text;
    std::string network;
    std::string rank_dump;
    std::size_t rank_k = 20;
    auto* rank = app.add_subcommand("rank", "Rank objects for one query with the fused global rank");
    rank->add_option("--corpus", corpus_path, "Corpus file")->required()->check(CLI::ExistingFile);
    rank->add_option("--query", query_text, "Query text")->required();
    rank->add_option("--k", rank_k, "Result cutoff")->capture_default_str();
    rank->add_option("--network", network, "Only rank objects of this network");
    rank->add_option("--rank-dump", rank_dump, "Write per-network partial ranks here");
    rank_opts.add_to(*rank);

    // evaluate
    RankingOptions eval_opts;
    std::string queries_path;
    std::string judgments_path;
    std::string truth_path;
    std::size_t eval_k = 20;
    auto* evaluate = app.add_subcommand("evaluate", "Compare FBR with the tf-idf baseline by NDCG");
    evaluate->add_option("--corpus", corpus_path, "Corpus file")->required()->check(CLI::ExistingFile);
    evaluate->add_option("--queries", queries_path, "Query file, one query per line")->required()->check(CLI::ExistingFile);
    auto* judg = evaluate->add_option("--judgments", judgments_path, "Judgments file")->check(CLI::ExistingFile);
    auto* truth = evaluate->add_option("--ground-truth", truth_path, "Ground-truth levels; the top-20 pool is judged from it")
                      ->check(CLI::ExistingFile);
    judg->excludes(truth);
    evaluate->add_option("--k", eval_k, "Deepest NDCG position")->capture_default_str();
    evaluate->add_option("--out", out_dir, "Report directory")->required();
    eval_opts.add_to(*evaluate);

    // report
    std::string report_dir;
    auto* report = app.add_subcommand("report", "Render an FBR vs baseline table from evaluate output");
    report->add_option("--in", report_dir, "Directory written by evaluate")->required()->check(CLI::ExistingDirectory);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << one_line(e.what()) << '\n';
        return kExitUsageError;
    }

    try {
        if (*generate) {
            GenSpec spec = GenSpec::scaled(scale, seed);
            if (!spec_path.empty()) {
                spec = load_gen_spec(spec_path, spec);
                if (generate->count("--seed")) spec.seed = seed;
            }
            const auto data = generate_corpus(spec);
            write_generated(data, default_music_profile(), out_dir);
            out << "wrote " << data.corpus.objects.size() << " objects in " << data.corpus.networks.size()
                << " networks, " << data.truth.queries.size() << " queries to " << out_dir << '\n';
        } else if (*validate) {
            std::vector<std::string> warnings;
            std::ifstream in(corpus_path);
            const Corpus corpus = parse_corpus(in, &warnings);
            for (const auto& w : warnings) log->warn("{}", w);
            const auto result = validate_corpus(corpus);
            if (!validate_profile.empty()) load_profile(validate_profile);
            for (const auto& v : result.violations) out << v.subject << '\t' << v.reason << '\n';
            if (!result.ok()) {
                err << "error: data: " << result.violations.size() << " violation(s)\n";
                return kExitDataError;
            }
            out << "ok\t" << corpus.networks.size() << " networks\t" << corpus.objects.size() << " objects\t"
                << corpus.intra_edge_count() << " intra edges\t" << corpus.interlink_candidates.size()
                << " interlinks\n";
        } else if (*index_cmd) {
            const Corpus corpus = read_corpus(corpus_path, *log);
            const auto index = build_inverted_index(corpus);
            out << "documents\t" << index.doc_count() << "\nterms\t" << index.term_count() << '\n';
            if (!index_out.empty()) {
                std::ofstream dump(index_out, std::ios::trunc);
                if (!dump) throw DataError("cannot write '" + index_out + "'");
                index.write_dump(dump);
            }
        } else if (*rank) {
            rank_opts.fusion.k = rank_k;
            rank_opts.check();
            const Query q = [&] {
                try {
                    return make_query(query_text);
                } catch (const EmptyQuery& e) {
                    throw UsageError(e.what());
                }
            }();
            const Corpus corpus = read_corpus(corpus_path, *log);
            if (!network.empty() && !corpus.networks.contains(network))
                throw UsageError("unknown network '" + network + "'");
            const auto ctx = prepare_ranking(corpus, rank_opts.profile(), rank_opts.prepare());
            if (!ctx.all_converged()) log->warn("partial rank did not converge in some network");
            if (!rank_dump.empty()) {
                std::ofstream dump(rank_dump, std::ios::trunc);
                if (!dump) throw DataError("cannot write '" + rank_dump + "'");
                for (const auto& [id, vec] : ctx.partial_ranks) {
                    dump << "# " << id << '\n';
                    write_rank_dump(vec, dump);
                }
            }
            CandidateFilter filter;
            filter.include_users = rank_opts.include_users;
            if (!network.empty()) filter.network = network;
            const auto list = fused_rank(q, ctx, rank_opts.fusion, filter);
            out << "rank\tobject_id\tscore\ttext\trank\tpop\n";
            for (std::size_t i = 0; i < list.entries.size(); ++i) {
                const auto& e = list.entries[i];
                out << i + 1 << '\t' << e.object_id << '\t' << fmt_double(e.score) << '\t'
                    << fmt_double(e.components.text) << '\t' << fmt_double(e.components.rank) << '\t'
                    << fmt_double(e.components.pop) << '\n';
            }
        } else if (*evaluate) {
            eval_opts.fusion.k = std::max<std::size_t>(eval_k, 1);
            eval_opts.check();
            if (eval_k == 0) throw UsageError("--k must be positive");
            if (judgments_path.empty() && truth_path.empty())
                throw UsageError("evaluate needs --judgments or --ground-truth");
            const Corpus corpus = read_corpus(corpus_path, *log);
            const auto queries = canonicalize_queries(load_query_lines(queries_path));
            const auto ctx = prepare_ranking(corpus, eval_opts.profile(), eval_opts.prepare());
            ExperimentParams params{eval_opts.fusion, eval_opts.prepare(), eval_opts.include_users};

            ExperimentResult result;
            if (!judgments_path.empty()) {
                result = run_experiment(ctx, queries, load_judgments(judgments_path), params, eval_k);
            } else {
                JudgmentSet judged;
                result = evaluate_against_truth(ctx, queries, load_judgments(truth_path), params, eval_k, &judged);
                std::filesystem::create_directories(out_dir);
                save_judgments(judged, std::filesystem::path(out_dir) / "judgments.tsv");
            }
            if (result.upstream_nonconverged) log->warn("partial rank did not converge in some network");
            write_report_files(result, out_dir);
            render_report(out_dir, out);
        } else if (*report) {
            render_report(report_dir, out);
        }
    } catch (const UsageError& e) {
        err << "error: usage: " << one_line(e.what()) << '\n';
        return kExitUsageError;
    } catch (const std::exception& e) {
        err << "error: data: " << one_line(e.what()) << '\n';
        return kExitDataError;
    }
    return kExitOk;
}

} // namespace fusionrank::cli
