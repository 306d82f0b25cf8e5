#include "fusionrank/linkgraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace fusionrank {

std::size_t IntraGraph::arc_count() const {
    std::size_t n = 0;
    for (const auto& adj : adjacency_) n += adj.size();
    return n;
}

std::optional<NodeIndex> IntraGraph::find(std::string_view object_id) const {
    auto it = lookup_.find(std::string(object_id));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

IntraGraph build_intra_graph(const SocialNetwork& network) {
    IntraGraph g;
    g.network_id_ = network.network_id;
    g.ids_.assign(network.object_ids.begin(), network.object_ids.end());
    g.lookup_.reserve(g.ids_.size());
    for (NodeIndex i = 0; i < g.ids_.size(); ++i) g.lookup_.emplace(g.ids_[i], i);
    g.adjacency_.resize(g.ids_.size());
    for (const auto& e : network.intra_edges) {
        auto a = g.find(e.a);
        auto b = g.find(e.b);
        if (!a || !b || *a == *b) continue; // rejected by corpus validation
        g.adjacency_[*a].push_back(*b);
        g.adjacency_[*b].push_back(*a);
    }
    for (auto& adj : g.adjacency_) std::sort(adj.begin(), adj.end());
    return g;
}

IntraGraph IntraGraph::from_edges(std::size_t n, std::span<const std::pair<NodeIndex, NodeIndex>> edges) {
    const std::size_t width = std::to_string(n > 0 ? n - 1 : 0).size();
    SocialNetwork net;
    net.network_id = "synthetic";
    auto name = [&](NodeIndex i) {
        std::string s = std::to_string(i);
        return std::string(width - s.size(), '0') + s;
    };
    for (NodeIndex i = 0; i < n; ++i) net.object_ids.insert(name(i));
    for (auto [a, b] : edges) net.intra_edges.push_back({name(a), name(b), IntraRelation::similar_to});
    return build_intra_graph(net);
}

void RankParams::validate() const {
    if (!(damping > 0.0 && damping < 1.0)) throw std::invalid_argument("damping must lie in (0, 1)");
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (max_iterations <= 0) throw std::invalid_argument("max_iterations must be positive");
    if (!(feedback_smoothing >= 0.0) || !std::isfinite(feedback_smoothing))
        throw std::invalid_argument("feedback_smoothing must be non-negative");
}

std::optional<double> RankVector::score(std::string_view object_id) const {
    auto it = lookup_.find(std::string(object_id));
    if (it == lookup_.end()) return std::nullopt;
    return scores[it->second];
}

void RankVector::build_lookup() {
    lookup_.clear();
    lookup_.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) lookup_.emplace(ids[i], i);
}

RankVector make_rank_vector(std::string network_id, std::vector<std::string> ids, std::vector<double> scores) {
    if (ids.size() != scores.size()) throw std::invalid_argument("ids and scores differ in length");
    RankVector v;
    v.network_id = std::move(network_id);
    v.ids = std::move(ids);
    v.scores = std::move(scores);
    v.converged = true;
    v.build_lookup();
    return v;
}

RankVector partial_rank(const IntraGraph& graph, const std::map<std::string, std::int64_t>& likes,
                        const RankParams& params, const IterationObserver& observer) {
    params.validate();
    const std::size_t n = graph.node_count();
    const double d = params.damping;

    std::vector<double> teleport(n, params.feedback_smoothing);
    for (const auto& [id, count] : likes) {
        if (count < 0) throw std::invalid_argument("negative like count for '" + id + "'");
        if (auto node = graph.find(id)) teleport[*node] += static_cast<double>(count);
    }
    const double teleport_mass = std::accumulate(teleport.begin(), teleport.end(), 0.0);
    for (auto& t : teleport) t = teleport_mass > 0.0 ? t / teleport_mass : 1.0 / static_cast<double>(n);

    std::vector<double> current(n, n > 0 ? 1.0 / static_cast<double>(n) : 0.0);
    std::vector<double> next(n);
    bool converged = n == 0;
    int iteration = 0;
    while (!converged && iteration < params.max_iterations) {
        ++iteration;
        double dangling = 0.0;
        for (std::size_t i = 0; i < n; ++i) next[i] = (1.0 - d) * teleport[i];
        for (NodeIndex i = 0; i < n; ++i) {
            const auto adj = graph.neighbors(i);
            if (adj.empty()) {
                dangling += current[i];
                continue;
            }
            const double share = d * current[i] / static_cast<double>(adj.size());
            for (NodeIndex j : adj) next[j] += share;
        }
        if (dangling > 0.0)
            for (std::size_t i = 0; i < n; ++i) next[i] += d * dangling * teleport[i];

        // Exact arithmetic keeps the sum at one; this removes accumulated rounding.
        const double total = std::accumulate(next.begin(), next.end(), 0.0);
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] /= total;
            change += std::abs(next[i] - current[i]);
        }
        std::swap(current, next);
        if (observer) observer(iteration, current);
        converged = change <= params.tolerance;
    }

    RankVector v = make_rank_vector(graph.network_id(), {graph.ids().begin(), graph.ids().end()}, std::move(current));
    v.converged = converged;
    v.iterations = iteration;
    return v;
}

std::map<std::string, std::int64_t> network_likes(const Corpus& corpus, const SocialNetwork& network) {
    std::map<std::string, std::int64_t> likes;
    for (const auto& id : network.object_ids)
        if (const WebObject* obj = corpus.find(id)) likes.emplace(id, obj->like_count);
    return likes;
}

std::optional<NormScheme> parse_norm_scheme(std::string_view name) {
    if (name == "minmax") return NormScheme::minmax;
    if (name == "zscore-clipped" || name == "zscore_clipped") return NormScheme::zscore_clipped;
    if (name == "none") return NormScheme::none;
    return std::nullopt;
}

std::vector<double> normalize_scores(std::span<const double> scores, NormScheme scheme) {
    std::vector<double> out(scores.begin(), scores.end());
    if (scores.empty() || scheme == NormScheme::none) return out;

    if (scheme == NormScheme::minmax) {
        const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
        const double range = *hi - *lo;
        for (auto& x : out) x = range > 0.0 ? (x - *lo) / range : 0.5;
        return out;
    }

    const double n = static_cast<double>(scores.size());
    const double mean = std::accumulate(scores.begin(), scores.end(), 0.0) / n;
    double var = 0.0;
    for (double x : scores) var += (x - mean) * (x - mean);
    const double sd = std::sqrt(var / n);
    constexpr double clip = 3.0;
    for (auto& x : out) {
        if (!(sd > 0.0)) {
            x = 0.5;
            continue;
        }
        const double z = std::clamp((x - mean) / sd, -clip, clip);
        x = (z + clip) / (2.0 * clip);
    }
    return out;
}

RankVector normalize_ranks(const RankVector& vec, NormScheme scheme) {
    if (vec.scores.empty()) throw std::invalid_argument("cannot normalize an empty rank vector");
    RankVector out = make_rank_vector(vec.network_id, vec.ids, normalize_scores(vec.scores, scheme));
    out.converged = vec.converged;
    out.iterations = vec.iterations;
    return out;
}

void write_rank_dump(const RankVector& vec, std::ostream& out) {
    const auto precision = out.precision(17);
    for (std::size_t i = 0; i < vec.size(); ++i)
        out << vec.ids[i] << '\t' << vec.scores[i] << '\t' << (vec.converged ? "true" : "false") << '\n';
    out.precision(precision);
}

} // namespace fusionrank
