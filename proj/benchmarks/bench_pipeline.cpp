#include <fusionrank/fusion.hpp>
#include <fusionrank/query.hpp>
#include <fusionrank/synthgen.hpp>
#include <fusionrank/tfidf.hpp>

#include <benchmark/benchmark.h>

using namespace fusionrank;

namespace {

const GeneratedData& data_at(double scale) {
    static std::map<double, GeneratedData> cache;
    auto it = cache.find(scale);
    if (it == cache.end()) it = cache.emplace(scale, generate_corpus(GenSpec::scaled(scale))).first;
    return it->second;
}

double scale_of(const benchmark::State& state) { return static_cast<double>(state.range(0)) / 100.0; }

void BM_BuildIndex(benchmark::State& state) {
    const auto& corpus = data_at(scale_of(state)).corpus;
    for (auto _ : state) benchmark::DoNotOptimize(build_inverted_index(corpus));
    state.counters["objects"] = static_cast<double>(corpus.objects.size());
}

void BM_PartialRank(benchmark::State& state) {
    const auto& corpus = data_at(scale_of(state)).corpus;
    const auto& net = corpus.networks.begin()->second;
    const auto graph = build_intra_graph(net);
    const auto likes = network_likes(corpus, net);
    for (auto _ : state) benchmark::DoNotOptimize(partial_rank(graph, likes));
    state.counters["nodes"] = static_cast<double>(graph.node_count());
}

void BM_PrepareRanking(benchmark::State& state) {
    const auto& corpus = data_at(scale_of(state)).corpus;
    const auto profile = default_music_profile();
    for (auto _ : state) benchmark::DoNotOptimize(prepare_ranking(corpus, profile));
}

void BM_FusedRank(benchmark::State& state) {
    const auto& data = data_at(scale_of(state));
    const auto ctx = prepare_ranking(data.corpus, default_music_profile());
    const auto queries = canonicalize_queries(data.truth.queries);
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(fused_rank(queries[i++ % queries.size()], ctx, FusionParams{}));
}

void BM_BaselineRank(benchmark::State& state) {
    const auto& data = data_at(scale_of(state));
    const auto index = build_inverted_index(data.corpus);
    const auto queries = canonicalize_queries(data.truth.queries);
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(baseline_rank(queries[i++ % queries.size()], index, 20));
}

} // namespace

// Argument is the scale relative to the full crawl, in percent.
BENCHMARK(BM_BuildIndex)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PartialRank)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrepareRanking)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FusedRank)->Arg(10)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BaselineRank)->Arg(10)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
