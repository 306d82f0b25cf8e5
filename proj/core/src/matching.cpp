#include "fusionrank/matching.hpp"

#include "fusionrank/errors.hpp"
#include "fusionrank/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <tuple>

namespace fusionrank {

using nlohmann::json;

namespace {

constexpr std::pair<Predicate, std::string_view> kPredicates[] = {
    {Predicate::has_title, "has_title"},
    {Predicate::genre_in_categories, "genre_in_categories"},
    {Predicate::min_tags, "min_tags"},
    {Predicate::min_description_tokens, "min_description_tokens"},
    {Predicate::kind_in, "kind_in"},
    {Predicate::has_uploader, "has_uploader"},
    {Predicate::min_likes, "min_likes"},
};

bool uses_min(Predicate p) {
    return p == Predicate::min_tags || p == Predicate::min_description_tokens || p == Predicate::min_likes;
}

} // namespace

std::string_view to_string(Predicate predicate) {
    for (const auto& [p, name] : kPredicates)
        if (p == predicate) return name;
    return "?";
}

std::optional<Predicate> parse_predicate(std::string_view name) {
    for (const auto& [p, n] : kPredicates)
        if (n == name) return p;
    return std::nullopt;
}

bool FeatureDefinition::holds(const WebObject& object, std::span<const std::string> categories) const {
    switch (predicate) {
    case Predicate::has_title: return count_tokens(object.title) > 0;
    case Predicate::genre_in_categories:
        return !object.genre.empty() && std::find(categories.begin(), categories.end(), object.genre) != categories.end();
    case Predicate::min_tags: {
        auto non_empty = std::count_if(object.tags.begin(), object.tags.end(),
                                       [](const std::string& t) { return count_tokens(t) > 0; });
        return non_empty >= min;
    }
    case Predicate::min_description_tokens:
        return static_cast<std::int64_t>(count_tokens(object.description)) >= min;
    case Predicate::kind_in: return std::find(kinds.begin(), kinds.end(), object.kind) != kinds.end();
    case Predicate::has_uploader: return object.uploader.has_value() && !object.uploader->empty();
    case Predicate::min_likes: return object.like_count >= min;
    }
    return false;
}

void DomainProfile::validate() const {
    const auto m = static_cast<int>(features.size());
    if (epsilon < 0) throw InvalidProfile("epsilon must be non-negative");
    if (epsilon >= m)
        throw InvalidProfile("epsilon (" + std::to_string(epsilon) + ") must be smaller than the feature count (" +
                             std::to_string(m) + ")");
    std::set<std::string> names;
    for (const auto& f : features) {
        if (f.name.empty()) throw InvalidProfile("feature with empty name");
        if (!names.insert(f.name).second) throw InvalidProfile("duplicate feature name '" + f.name + "'");
        if (uses_min(f.predicate) && f.min < 0) throw InvalidProfile("feature '" + f.name + "' has negative min");
    }
    for (const auto& [relation, w] : popularity_weights)
        if (!std::isfinite(w) || w < 0.0)
            throw InvalidProfile("weight for '" + std::string(to_string(relation)) + "' must be finite and >= 0");
}

DomainProfile default_music_profile() {
    DomainProfile p;
    p.domain_name = "music";
    p.epsilon = 2;
    p.features = {
        {"has_title", Predicate::has_title, 1, {}},
        {"has_genre_in_category_list", Predicate::genre_in_categories, 1, {}},
        {"has_tags", Predicate::min_tags, 1, {}},
        {"has_description", Predicate::min_description_tokens, 5, {}},
        {"kind_is_musical", Predicate::kind_in, 1, {ObjectKind::song, ObjectKind::singer, ObjectKind::album}},
        {"has_uploader", Predicate::has_uploader, 1, {}},
    };
    p.popularity_weights = {
        {InterRelation::duplicate_of, 1.0},
        {InterRelation::same_singer, 0.5},
        {InterRelation::same_album, 0.5},
        {InterRelation::shared_context, 0.25},
    };
    return p;
}

DomainProfile parse_profile(std::istream& in) {
    DomainProfile p;
    bool have_domain = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json rec;
        try {
            rec = json::parse(line);
            if (!rec.is_object()) throw MalformedRecord(line_no, "record must be a JSON object");
            const std::string type = rec.at("type").get<std::string>();
            if (type == "domain") {
                if (have_domain) throw MalformedRecord(line_no, "second domain record");
                have_domain = true;
                p.domain_name = rec.at("name").get<std::string>();
                p.epsilon = rec.at("epsilon").get<int>();
            } else if (type == "feature") {
                FeatureDefinition f;
                f.name = rec.at("name").get<std::string>();
                const std::string pred = rec.at("predicate").get<std::string>();
                auto parsed = parse_predicate(pred);
                if (!parsed) throw MalformedRecord(line_no, "unknown predicate '" + pred + "'");
                f.predicate = *parsed;
                f.min = rec.value("min", std::int64_t{1});
                if (f.predicate == Predicate::kind_in) {
                    for (const auto& k : rec.at("kinds")) {
                        auto kind = parse_object_kind(k.get<std::string>());
                        if (!kind) throw MalformedRecord(line_no, "unknown kind '" + k.get<std::string>() + "'");
                        f.kinds.push_back(*kind);
                    }
                }
                p.features.push_back(std::move(f));
            } else if (type == "weight") {
                const std::string rel = rec.at("relation").get<std::string>();
                auto relation = parse_inter_relation(rel);
                if (!relation) throw MalformedRecord(line_no, "unknown relation '" + rel + "'");
                p.popularity_weights[*relation] = rec.at("value").get<double>();
            } else {
                throw MalformedRecord(line_no, "unknown record type '" + type + "'");
            }
        } catch (const json::exception& e) {
            throw MalformedRecord(line_no, e.what());
        }
    }
    if (!have_domain) throw InvalidProfile("profile has no domain record");
    p.validate();
    return p;
}

DomainProfile load_profile(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open profile file '" + path.string() + "'");
    return parse_profile(in);
}

void save_profile(const DomainProfile& profile, std::ostream& out) {
    out << json{{"type", "domain"}, {"name", profile.domain_name}, {"epsilon", profile.epsilon}}.dump() << '\n';
    for (const auto& f : profile.features) {
        json rec = {{"type", "feature"}, {"name", f.name}, {"predicate", std::string(to_string(f.predicate))}};
        if (uses_min(f.predicate)) rec["min"] = f.min;
        if (f.predicate == Predicate::kind_in) {
            json kinds = json::array();
            for (auto k : f.kinds) kinds.push_back(std::string(to_string(k)));
            rec["kinds"] = kinds;
        }
        out << rec.dump() << '\n';
    }
    for (const auto& [relation, w] : profile.popularity_weights)
        out << json{{"type", "weight"}, {"relation", std::string(to_string(relation))}, {"value", w}}.dump() << '\n';
}

void save_profile(const DomainProfile& profile, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot write profile file '" + path.string() + "'");
    save_profile(profile, out);
}

FeatureVector extract_features(const WebObject& object, const DomainProfile& profile,
                               std::span<const std::string> categories) {
    FeatureVector fv;
    fv.object_id = object.id;
    for (const auto& f : profile.features)
        if (f.holds(object, categories)) fv.matched.push_back(f.name);
    return fv;
}

bool respects_kind_hierarchy(IntraRelation relation, ObjectKind a, ObjectKind b) {
    auto pair_is = [&](ObjectKind x, ObjectKind y) { return (a == x && b == y) || (a == y && b == x); };
    switch (relation) {
    case IntraRelation::sung_by: return pair_is(ObjectKind::song, ObjectKind::singer);
    case IntraRelation::in_album: return pair_is(ObjectKind::song, ObjectKind::album);
    case IntraRelation::uploaded_by:
        return (a == ObjectKind::user && is_musical(b)) || (b == ObjectKind::user && is_musical(a));
    case IntraRelation::friend_of: return a == ObjectKind::user && b == ObjectKind::user;
    case IntraRelation::similar_to: return a == b;
    }
    return false;
}

InheritanceGraph build_inheritance_graph(const Corpus& corpus, const DomainProfile& profile,
                                         std::span<const InterLink> interlinks) {
    InheritanceGraph ig;
    for (const auto& [id, obj] : corpus.objects)
        if (relationship(extract_features(obj, profile, corpus.categories), profile)) ig.nodes.insert(id);

    for (const auto& [_, net] : corpus.networks) {
        for (const auto& e : net.intra_edges) {
            if (!ig.contains(e.a) || !ig.contains(e.b)) continue;
            if (!respects_kind_hierarchy(e.relation, corpus.objects.at(e.a).kind, corpus.objects.at(e.b).kind))
                continue;
            ig.edges.push_back({e.a, e.b, std::string(to_string(e.relation)), false});
        }
    }
    for (const auto& l : interlinks)
        if (ig.contains(l.src) && ig.contains(l.dst))
            ig.edges.push_back({l.src, l.dst, std::string(to_string(l.relation)), true});
    return ig;
}

InheritanceGraph build_inheritance_graph(const Corpus& corpus, const DomainProfile& profile) {
    return build_inheritance_graph(corpus, profile, corpus.interlink_candidates);
}

std::vector<InterLink> validate_interlinks(std::span<const InterLink> interlinks, const InheritanceGraph& ig) {
    std::vector<InterLink> out(interlinks.begin(), interlinks.end());
    for (auto& l : out) l.valid = ig.contains(l.src) && ig.contains(l.dst);
    return out;
}

std::vector<InterLink> discover_interlinks(const Corpus& corpus, std::span<const InterLink> existing) {
    std::map<std::pair<std::string, ObjectKind>, std::vector<const WebObject*>> groups;
    for (const auto& [id, obj] : corpus.objects) {
        std::string key = normalize_text(obj.title);
        if (key.empty()) continue;
        groups[{std::move(key), obj.kind}].push_back(&obj);
    }

    std::set<std::tuple<std::string, std::string, InterRelation>> seen;
    for (const auto& l : existing) seen.emplace(l.src, l.dst, l.relation);

    std::vector<InterLink> found;
    for (const auto& [key, members] : groups) {
        if (members.size() < 2) continue;
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                const WebObject* x = members[i];
                const WebObject* y = members[j];
                if (x->network_id == y->network_id) continue;
                if (x->network_id < y->network_id) std::swap(x, y); // x is in the later network
                if (!seen.emplace(x->id, y->id, InterRelation::duplicate_of).second) continue;
                found.push_back({x->id, y->id, InterRelation::duplicate_of, std::nullopt});
            }
        }
    }
    return found;
}

double popularity_factor(std::string_view object_id, std::span<const InterLink> interlinks,
                         const DomainProfile& profile) {
    double score = 0.0;
    for (const auto& l : interlinks) {
        if (l.dst != object_id || !l.valid.value_or(false)) continue;
        auto w = profile.popularity_weights.find(l.relation);
        if (w == profile.popularity_weights.end())
            throw UnknownRelationKind("no popularity weight for relation '" + std::string(to_string(l.relation)) + "'");
        score += w->second;
    }
    return score;
}

double PopularityTable::score(std::string_view object_id) const {
    auto it = scores_.find(std::string(object_id));
    return it == scores_.end() ? 0.0 : it->second;
}

PopularityTable popularity_table(std::span<const InterLink> interlinks, const DomainProfile& profile) {
    std::map<std::string, double> scores;
    for (const auto& l : interlinks) {
        if (!l.valid.value_or(false)) continue;
        auto w = profile.popularity_weights.find(l.relation);
        if (w == profile.popularity_weights.end())
            throw UnknownRelationKind("no popularity weight for relation '" + std::string(to_string(l.relation)) + "'");
        scores[l.dst] += w->second;
    }
    return PopularityTable(std::move(scores));
}

} // namespace fusionrank
