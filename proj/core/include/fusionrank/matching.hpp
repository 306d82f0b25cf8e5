#pragma once

#include "fusionrank/corpus.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fusionrank {

/// Built-in predicates a domain feature can use.
enum class Predicate {
    has_title,           // non-empty title after tokenization
    genre_in_categories, // genre is one of the corpus category labels
    min_tags,            // at least `min` tags
    min_description_tokens,
    kind_in,             // object kind is listed in `kinds`
    has_uploader,
    min_likes,
};

std::string_view to_string(Predicate predicate);
std::optional<Predicate> parse_predicate(std::string_view name);

struct FeatureDefinition {
    std::string name;
    Predicate predicate = Predicate::has_title;
    std::int64_t min = 1;           // min_tags, min_description_tokens, min_likes
    std::vector<ObjectKind> kinds;  // kind_in

    bool holds(const WebObject& object, std::span<const std::string> categories) const;
};

/// Feature set, admission threshold and per-relation popularity weights of a vertical domain.
struct DomainProfile {
    std::string domain_name;
    std::vector<FeatureDefinition> features;
    int epsilon = 2;
    std::map<InterRelation, double> popularity_weights;

    std::size_t feature_count() const { return features.size(); }

    /// Throws InvalidProfile unless 0 <= epsilon < m, names are unique and weights finite
    /// and non-negative.
    void validate() const;
};

/// Six music predicates with epsilon 2 and weights duplicate_of 1.0, same_singer 0.5,
/// same_album 0.5, shared_context 0.25.
DomainProfile default_music_profile();

/// Line-delimited JSON records: one `domain` record (name, epsilon), one `feature` record per
/// predicate (name, predicate, optional min / kinds) and one `weight` record per relation.
DomainProfile parse_profile(std::istream& in);
DomainProfile load_profile(const std::filesystem::path& path);
void save_profile(const DomainProfile& profile, std::ostream& out);
void save_profile(const DomainProfile& profile, const std::filesystem::path& path);

struct FeatureVector {
    std::string object_id;
    std::vector<std::string> matched; // profile order

    std::size_t n() const { return matched.size(); }
};

FeatureVector extract_features(const WebObject& object, const DomainProfile& profile,
                               std::span<const std::string> categories);

/// Binary admission rule: true iff the matched count is strictly greater than epsilon.
constexpr bool relationship(std::size_t matched_count, int epsilon) {
    return epsilon < 0 || matched_count > static_cast<std::size_t>(epsilon);
}

inline bool relationship(const FeatureVector& fv, const DomainProfile& profile) {
    return relationship(fv.n(), profile.epsilon);
}

struct InheritanceEdge {
    std::string a;
    std::string b;
    std::string relation; // intra or inter relation name
    bool cross_network = false;

    friend bool operator==(const InheritanceEdge&, const InheritanceEdge&) = default;
};

/// Admitted objects and the typed relations among them.
struct InheritanceGraph {
    std::set<std::string> nodes;
    std::vector<InheritanceEdge> edges;

    bool contains(std::string_view id) const { return nodes.contains(std::string(id)); }
};

/// True when an intra relation connects the object kinds it is defined for:
/// sung_by joins song and singer, in_album song and album, uploaded_by a user and a musical
/// object, friend_of two users and similar_to two objects of one kind.
bool respects_kind_hierarchy(IntraRelation relation, ObjectKind a, ObjectKind b);

/// Nodes are the objects with Rel = 1. Intra edges and interlink candidates become edges when
/// both endpoints are admitted and, for intra edges, the kind hierarchy holds.
InheritanceGraph build_inheritance_graph(const Corpus& corpus, const DomainProfile& profile,
                                         std::span<const InterLink> interlinks);

InheritanceGraph build_inheritance_graph(const Corpus& corpus, const DomainProfile& profile);

/// Copies `interlinks` with `valid` set: true iff both endpoints are nodes of `ig`.
/// Invalid links are kept.
std::vector<InterLink> validate_interlinks(std::span<const InterLink> interlinks, const InheritanceGraph& ig);

inline std::vector<InterLink> validate_interlinks(const Corpus& corpus, const InheritanceGraph& ig) {
    return validate_interlinks(corpus.interlink_candidates, ig);
}

/// Candidate duplicate_of links between objects of different networks whose normalized
/// titles and kinds match. The link points from the object in the later network (by id
/// order) to the one in the earlier network. Pairs already present in `existing` are skipped.
std::vector<InterLink> discover_interlinks(const Corpus& corpus, std::span<const InterLink> existing = {});

/// Sum of popularity weights over the valid links whose dst is `object_id`.
/// Throws UnknownRelationKind when such a link's relation has no weight.
double popularity_factor(std::string_view object_id, std::span<const InterLink> interlinks,
                         const DomainProfile& profile);

class PopularityTable {
public:
    PopularityTable() = default;
    explicit PopularityTable(std::map<std::string, double> scores) : scores_(std::move(scores)) {}

    /// Zero for objects without valid incoming links.
    double score(std::string_view object_id) const;
    const std::map<std::string, double>& entries() const { return scores_; }

private:
    std::map<std::string, double> scores_;
};

PopularityTable popularity_table(std::span<const InterLink> interlinks, const DomainProfile& profile);

} // namespace fusionrank
