#pragma once

#include <fusionrank/corpus.hpp>
#include <fusionrank/linkgraph.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace fixtures {

using fusionrank::Corpus;
using fusionrank::IntraEdge;
using fusionrank::IntraRelation;
using fusionrank::ObjectKind;
using fusionrank::WebObject;

inline WebObject song(std::string id, std::string net, std::string title, std::string description = {},
                      std::vector<std::string> tags = {}, std::string genre = {}, std::int64_t likes = 0) {
    WebObject o;
    o.id = std::move(id);
    o.network_id = std::move(net);
    o.kind = ObjectKind::song;
    o.title = std::move(title);
    o.description = std::move(description);
    o.tags = std::move(tags);
    o.genre = std::move(genre);
    o.like_count = likes;
    return o;
}

inline WebObject of_kind(WebObject o, ObjectKind kind) {
    o.kind = kind;
    return o;
}

/// Empty corpus with the given networks and a single category list.
inline Corpus empty_corpus(std::initializer_list<const char*> networks,
                           std::vector<std::string> categories = {"Pop", "Rock", "Jazz"}) {
    Corpus c;
    for (const char* id : networks) c.networks[id].network_id = id;
    c.categories = std::move(categories);
    return c;
}

inline void add_edge(Corpus& c, const std::string& net, std::string a, std::string b,
                     IntraRelation rel = IntraRelation::similar_to) {
    c.networks.at(net).intra_edges.push_back({std::move(a), std::move(b), rel});
}

/// Dense power iteration written directly from the definition, independent of the sparse
/// implementation: x <- d * M x + (1 - d) p, with column j of M spreading x_j over the arcs of
/// j, or along p when j has none. Runs to a much tighter tolerance than the library default.
inline std::vector<double> dense_pagerank(std::size_t n, const std::vector<std::pair<int, int>>& edges,
                                          const std::vector<double>& likes, double d, double smoothing = 1.0) {
    std::vector<std::vector<double>> adj(n, std::vector<double>(n, 0.0));
    for (auto [a, b] : edges) {
        adj[a][b] += 1.0;
        adj[b][a] += 1.0;
    }
    std::vector<double> p(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += p[i] = smoothing + likes[i];
    for (auto& v : p) v /= total;

    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        double deg = 0.0;
        for (std::size_t i = 0; i < n; ++i) deg += adj[i][j];
        for (std::size_t i = 0; i < n; ++i) m[i][j] = deg > 0 ? adj[i][j] / deg : p[i];
    }

    std::vector<double> x(n, 1.0 / static_cast<double>(n)), next(n);
    for (int it = 0; it < 100000; ++it) {
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += m[i][j] * x[j];
            next[i] = d * s + (1.0 - d) * p[i];
        }
        for (std::size_t i = 0; i < n; ++i) delta += std::abs(next[i] - x[i]);
        x.swap(next);
        if (delta < 1e-14) break;
    }
    return x;
}

struct RandomGraph {
    std::size_t n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<double> likes;
};

/// Random simple graph with 1..max_nodes nodes, edge probability drawn per graph.
inline RandomGraph random_graph(std::mt19937_64& rng, std::size_t max_nodes = 10) {
    RandomGraph g;
    g.n = std::uniform_int_distribution<std::size_t>(1, max_nodes)(rng);
    const double density = std::uniform_real_distribution<double>(0.0, 0.8)(rng);
    std::bernoulli_distribution edge(density);
    for (std::size_t a = 0; a < g.n; ++a)
        for (std::size_t b = a + 1; b < g.n; ++b)
            if (edge(rng)) g.edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    std::uniform_int_distribution<int> like(0, 20);
    for (std::size_t i = 0; i < g.n; ++i) g.likes.push_back(like(rng));
    return g;
}

inline fusionrank::IntraGraph to_graph(const RandomGraph& g) {
    std::vector<std::pair<fusionrank::NodeIndex, fusionrank::NodeIndex>> e;
    for (auto [a, b] : g.edges) e.emplace_back(a, b);
    return fusionrank::IntraGraph::from_edges(g.n, e);
}

inline std::map<std::string, std::int64_t> likes_map(const fusionrank::IntraGraph& graph,
                                                     const std::vector<double>& likes) {
    std::map<std::string, std::int64_t> out;
    for (std::size_t i = 0; i < graph.node_count(); ++i)
        out[graph.id(static_cast<fusionrank::NodeIndex>(i))] = static_cast<std::int64_t>(likes[i]);
    return out;
}

inline double l1(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

} // namespace fixtures
