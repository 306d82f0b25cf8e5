#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fusionrank {

enum class ObjectKind { song, singer, album, user };

/// Relations inside one network. Stored undirected.
enum class IntraRelation { sung_by, in_album, similar_to, uploaded_by, friend_of };

/// Relations between objects of different networks. Stored directed (src -> dst).
enum class InterRelation { duplicate_of, same_singer, same_album, shared_context };

std::string_view to_string(ObjectKind kind);
std::string_view to_string(IntraRelation relation);
std::string_view to_string(InterRelation relation);

// The parse_* functions return nullopt on unknown names.
std::optional<ObjectKind> parse_object_kind(std::string_view name);
std::optional<IntraRelation> parse_intra_relation(std::string_view name);
std::optional<InterRelation> parse_inter_relation(std::string_view name);

constexpr bool is_musical(ObjectKind kind) { return kind != ObjectKind::user; }

struct WebObject {
    std::string id;
    std::string network_id;
    ObjectKind kind = ObjectKind::song;
    std::string title;
    std::vector<std::string> tags;
    std::string genre; // empty when absent
    std::string description;
    std::optional<std::string> uploader;
    double rating = 0.0;
    std::int64_t like_count = 0;

    friend bool operator==(const WebObject&, const WebObject&) = default;
};

struct IntraEdge {
    std::string a;
    std::string b;
    IntraRelation relation = IntraRelation::similar_to;

    friend bool operator==(const IntraEdge&, const IntraEdge&) = default;
};

struct SocialNetwork {
    std::string network_id;
    double rating_scale_max = 5.0;
    std::set<std::string> object_ids;
    std::vector<IntraEdge> intra_edges;

    friend bool operator==(const SocialNetwork&, const SocialNetwork&) = default;
};

struct InterLink {
    std::string src;
    std::string dst;
    InterRelation relation = InterRelation::duplicate_of;
    std::optional<bool> valid; // set by validate_interlinks only

    friend bool operator==(const InterLink&, const InterLink&) = default;
};

struct Corpus {
    std::map<std::string, SocialNetwork> networks;
    std::map<std::string, WebObject> objects;
    std::vector<InterLink> interlink_candidates;
    std::vector<std::string> categories;

    const WebObject* find(std::string_view id) const;
    bool has_category(std::string_view label) const;

    std::size_t intra_edge_count() const;

    friend bool operator==(const Corpus&, const Corpus&) = default;
};

enum class ViolationKind {
    dangling_reference,
    membership_mismatch,
    self_loop,
    duplicate_edge,
    same_network_interlink,
    unknown_category,
    value_out_of_range,
    missing_categories,
};

/// One invariant violation found by validate_corpus.
struct Violation {
    ViolationKind kind;
    std::string subject; // object id, edge "a|b|relation", or interlink "src->dst|relation"
    std::string reason;
    std::string offending_id; // the unresolved id for dangling references
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

ValidationReport validate_corpus(const Corpus& corpus);

/// Parses corpus records. Fails on malformed lines and duplicate ids but does not check
/// referential integrity; use validate_corpus on the result for a full report.
/// Unknown fields are reported through `warnings` when given.
Corpus parse_corpus(std::istream& in, std::vector<std::string>* warnings = nullptr);

/// parse_corpus followed by validation. Throws DanglingReference when an id does not
/// resolve and InvalidCorpus for any other violation.
Corpus load_corpus(std::istream& in, std::vector<std::string>* warnings = nullptr);
Corpus load_corpus(const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr);

void save_corpus(const Corpus& corpus, std::ostream& out);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

/// Adds an object to its network, rejecting duplicate ids.
void add_object(Corpus& corpus, WebObject object);

} // namespace fusionrank
