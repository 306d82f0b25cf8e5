#include "fusionrank/corpus.hpp"

#include "fusionrank/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <tuple>
#include <utility>

namespace fusionrank {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<ObjectKind, std::string_view>, 4> kObjectKinds{{
    {ObjectKind::song, "song"},
    {ObjectKind::singer, "singer"},
    {ObjectKind::album, "album"},
    {ObjectKind::user, "user"},
}};

constexpr std::array<std::pair<IntraRelation, std::string_view>, 5> kIntraRelations{{
    {IntraRelation::sung_by, "sung_by"},
    {IntraRelation::in_album, "in_album"},
    {IntraRelation::similar_to, "similar_to"},
    {IntraRelation::uploaded_by, "uploaded_by"},
    {IntraRelation::friend_of, "friend_of"},
}};

constexpr std::array<std::pair<InterRelation, std::string_view>, 4> kInterRelations{{
    {InterRelation::duplicate_of, "duplicate_of"},
    {InterRelation::same_singer, "same_singer"},
    {InterRelation::same_album, "same_album"},
    {InterRelation::shared_context, "shared_context"},
}};

template <typename Table, typename Enum>
std::string_view name_of(const Table& table, Enum value) {
    for (const auto& [v, name] : table)
        if (v == value) return name;
    return "?";
}

template <typename Enum, typename Table>
std::optional<Enum> value_of(const Table& table, std::string_view name) {
    for (const auto& [v, n] : table)
        if (n == name) return v;
    return std::nullopt;
}

std::string edge_subject(const IntraEdge& e) {
    return e.a + "|" + e.b + "|" + std::string(to_string(e.relation));
}

std::string link_subject(const InterLink& l) {
    return l.src + "->" + l.dst + "|" + std::string(to_string(l.relation));
}

class RecordReader {
public:
    RecordReader(const json& record, std::size_t line, std::vector<std::string>* warnings)
        : record_(record), line_(line), warnings_(warnings) {}

    std::string required_string(const char* key) {
        seen_.push_back(key);
        auto it = record_.find(key);
        if (it == record_.end() || !it->is_string())
            throw MalformedRecord(line_, std::string("missing or non-string field '") + key + "'");
        return it->get<std::string>();
    }

    std::optional<std::string> optional_string(const char* key) {
        seen_.push_back(key);
        auto it = record_.find(key);
        if (it == record_.end() || it->is_null()) return std::nullopt;
        if (!it->is_string())
            throw MalformedRecord(line_, std::string("field '") + key + "' must be a string");
        return it->get<std::string>();
    }

    double optional_number(const char* key, double fallback) {
        seen_.push_back(key);
        auto it = record_.find(key);
        if (it == record_.end()) return fallback;
        if (!it->is_number())
            throw MalformedRecord(line_, std::string("field '") + key + "' must be a number");
        return it->get<double>();
    }

    std::int64_t optional_integer(const char* key, std::int64_t fallback) {
        seen_.push_back(key);
        auto it = record_.find(key);
        if (it == record_.end()) return fallback;
        if (!it->is_number_integer())
            throw MalformedRecord(line_, std::string("field '") + key + "' must be an integer");
        return it->get<std::int64_t>();
    }

    std::vector<std::string> optional_string_list(const char* key) {
        seen_.push_back(key);
        std::vector<std::string> out;
        auto it = record_.find(key);
        if (it == record_.end() || it->is_null()) return out;
        if (!it->is_array())
            throw MalformedRecord(line_, std::string("field '") + key + "' must be a list");
        for (const auto& v : *it) {
            if (!v.is_string())
                throw MalformedRecord(line_, std::string("field '") + key + "' must hold strings");
            out.push_back(v.get<std::string>());
        }
        return out;
    }

    template <typename Enum>
    Enum required_enum(const char* key, std::optional<Enum> (*parse)(std::string_view)) {
        const std::string name = required_string(key);
        auto v = parse(name);
        if (!v) throw MalformedRecord(line_, std::string("unknown ") + key + " '" + name + "'");
        return *v;
    }

    void finish() const {
        if (!warnings_) return;
        for (const auto& [key, value] : record_.items()) {
            if (key == "type") continue;
            if (std::find(seen_.begin(), seen_.end(), key) == seen_.end())
                warnings_->push_back("line " + std::to_string(line_) + ": ignoring unknown field '" + key + "'");
        }
    }

private:
    const json& record_;
    std::size_t line_;
    std::vector<std::string>* warnings_;
    std::vector<std::string> seen_;
};

} // namespace

std::string_view to_string(ObjectKind kind) { return name_of(kObjectKinds, kind); }
std::string_view to_string(IntraRelation relation) { return name_of(kIntraRelations, relation); }
std::string_view to_string(InterRelation relation) { return name_of(kInterRelations, relation); }

std::optional<ObjectKind> parse_object_kind(std::string_view name) {
    return value_of<ObjectKind>(kObjectKinds, name);
}
std::optional<IntraRelation> parse_intra_relation(std::string_view name) {
    return value_of<IntraRelation>(kIntraRelations, name);
}
std::optional<InterRelation> parse_inter_relation(std::string_view name) {
    return value_of<InterRelation>(kInterRelations, name);
}

const WebObject* Corpus::find(std::string_view id) const {
    auto it = objects.find(std::string(id));
    return it == objects.end() ? nullptr : &it->second;
}

bool Corpus::has_category(std::string_view label) const {
    return std::find(categories.begin(), categories.end(), label) != categories.end();
}

std::size_t Corpus::intra_edge_count() const {
    std::size_t n = 0;
    for (const auto& [_, net] : networks) n += net.intra_edges.size();
    return n;
}

void add_object(Corpus& corpus, WebObject object) {
    const std::string id = object.id;
    const std::string network = object.network_id;
    if (!corpus.objects.emplace(id, std::move(object)).second) throw DuplicateId(id);
    corpus.networks[network].object_ids.insert(id);
}

ValidationReport validate_corpus(const Corpus& corpus) {
    ValidationReport report;
    auto add = [&](ViolationKind kind, std::string subject, std::string reason, std::string offending = {}) {
        report.violations.push_back({kind, std::move(subject), std::move(reason), std::move(offending)});
    };

    if (corpus.categories.empty())
        add(ViolationKind::missing_categories, "corpus", "no category labels declared");

    for (const auto& [id, obj] : corpus.objects) {
        auto net = corpus.networks.find(obj.network_id);
        if (net == corpus.networks.end()) {
            add(ViolationKind::dangling_reference, id, "unknown network '" + obj.network_id + "'", obj.network_id);
        } else {
            if (!net->second.object_ids.contains(id))
                add(ViolationKind::membership_mismatch, id, "not listed as a member of its network");
            if (obj.rating < 0.0 || obj.rating > net->second.rating_scale_max)
                add(ViolationKind::value_out_of_range, id, "rating outside the network's rating scale");
        }
        if (obj.like_count < 0) add(ViolationKind::value_out_of_range, id, "negative like count");
        if (!obj.genre.empty() && !corpus.has_category(obj.genre))
            add(ViolationKind::unknown_category, id, "genre '" + obj.genre + "' is not a declared category");
        if (obj.uploader && !corpus.objects.contains(*obj.uploader))
            add(ViolationKind::dangling_reference, id, "unknown uploader '" + *obj.uploader + "'", *obj.uploader);
    }

    for (const auto& [net_id, net] : corpus.networks) {
        if (!(net.rating_scale_max > 0.0))
            add(ViolationKind::value_out_of_range, net_id, "rating scale must be positive");
        for (const auto& member : net.object_ids) {
            const WebObject* obj = corpus.find(member);
            if (!obj)
                add(ViolationKind::dangling_reference, net_id, "member '" + member + "' does not exist", member);
            else if (obj->network_id != net_id)
                add(ViolationKind::membership_mismatch, member, "listed in network '" + net_id + "' but owned by '" +
                                                                    obj->network_id + "'");
        }

        std::set<std::tuple<std::string, std::string, IntraRelation>> seen;
        for (const auto& e : net.intra_edges) {
            const std::string subject = edge_subject(e);
            if (e.a == e.b) add(ViolationKind::self_loop, subject, "self-loop");
            bool endpoints_ok = true;
            for (const auto* end : {&e.a, &e.b}) {
                if (!corpus.objects.contains(*end)) {
                    add(ViolationKind::dangling_reference, subject, "endpoint '" + *end + "' does not exist", *end);
                    endpoints_ok = false;
                } else if (!net.object_ids.contains(*end)) {
                    add(ViolationKind::membership_mismatch, subject, "endpoint '" + *end + "' is not in " + net_id);
                    endpoints_ok = false;
                }
            }
            if (!endpoints_ok) continue;
            auto key = std::make_tuple(std::min(e.a, e.b), std::max(e.a, e.b), e.relation);
            if (!seen.insert(key).second) add(ViolationKind::duplicate_edge, subject, "duplicate undirected edge");
        }
    }

    for (const auto& link : corpus.interlink_candidates) {
        const std::string subject = link_subject(link);
        const WebObject* src = corpus.find(link.src);
        const WebObject* dst = corpus.find(link.dst);
        if (!src) add(ViolationKind::dangling_reference, subject, "src '" + link.src + "' does not exist", link.src);
        if (!dst) add(ViolationKind::dangling_reference, subject, "dst '" + link.dst + "' does not exist", link.dst);
        if (src && dst && src->network_id == dst->network_id)
            add(ViolationKind::same_network_interlink, subject, "src and dst are in the same network");
    }
    return report;
}

Corpus parse_corpus(std::istream& in, std::vector<std::string>* warnings) {
    Corpus corpus;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json record;
        try {
            record = json::parse(line);
        } catch (const json::parse_error& e) {
            throw MalformedRecord(line_no, std::string("not a JSON record: ") + e.what());
        }
        if (!record.is_object()) throw MalformedRecord(line_no, "record must be a JSON object");
        auto type_it = record.find("type");
        if (type_it == record.end() || !type_it->is_string()) throw MalformedRecord(line_no, "missing record type");
        const std::string type = type_it->get<std::string>();

        RecordReader r(record, line_no, warnings);
        if (type == "network") {
            const std::string id = r.required_string("id");
            auto& net = corpus.networks[id];
            if (!net.network_id.empty()) throw DuplicateId(id);
            net.network_id = id;
            net.rating_scale_max = r.optional_number("rating_scale_max", 5.0);
            for (auto& label : r.optional_string_list("categories"))
                if (!corpus.has_category(label)) corpus.categories.push_back(std::move(label));
        } else if (type == "object") {
            WebObject obj;
            obj.id = r.required_string("id");
            obj.network_id = r.required_string("network");
            obj.kind = r.required_enum<ObjectKind>("kind", &parse_object_kind);
            obj.title = r.optional_string("title").value_or("");
            obj.tags = r.optional_string_list("tags");
            obj.genre = r.optional_string("genre").value_or("");
            obj.description = r.optional_string("description").value_or("");
            obj.uploader = r.optional_string("uploader");
            obj.rating = r.optional_number("rating", 0.0);
            obj.like_count = r.optional_integer("likes", 0);
            if (corpus.objects.contains(obj.id)) throw DuplicateId(obj.id);
            const std::string id = obj.id;
            const std::string net = obj.network_id;
            corpus.objects.emplace(id, std::move(obj));
            // Membership is recorded even if the network record has not been seen yet;
            // validation reports objects whose network never appears.
            corpus.networks[net].object_ids.insert(id);
        } else if (type == "intra_edge") {
            IntraEdge e;
            const std::string net = r.required_string("network");
            e.a = r.required_string("a");
            e.b = r.required_string("b");
            e.relation = r.required_enum<IntraRelation>("relation", &parse_intra_relation);
            corpus.networks[net].intra_edges.push_back(std::move(e));
        } else if (type == "interlink") {
            InterLink l;
            l.src = r.required_string("src");
            l.dst = r.required_string("dst");
            l.relation = r.required_enum<InterRelation>("relation", &parse_inter_relation);
            corpus.interlink_candidates.push_back(std::move(l));
        } else {
            throw MalformedRecord(line_no, "unknown record type '" + type + "'");
        }
        r.finish();
    }
    // Networks referenced by objects or edges but never declared keep an empty id; validation
    // then flags the dangling reference.
    for (auto it = corpus.networks.begin(); it != corpus.networks.end();) {
        if (it->second.network_id.empty()) {
            for (const auto& member : it->second.object_ids)
                throw DanglingReference(corpus.objects.at(member).network_id);
            if (!it->second.intra_edges.empty()) throw DanglingReference(it->first);
            it = corpus.networks.erase(it);
        } else {
            ++it;
        }
    }
    return corpus;
}

Corpus load_corpus(std::istream& in, std::vector<std::string>* warnings) {
    Corpus corpus = parse_corpus(in, warnings);
    const auto report = validate_corpus(corpus);
    for (const auto& v : report.violations)
        if (v.kind == ViolationKind::dangling_reference) throw DanglingReference(v.offending_id);
    if (!report.ok()) {
        const auto& v = report.violations.front();
        throw InvalidCorpus(v.subject + ": " + v.reason);
    }
    return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open corpus file '" + path.string() + "'");
    return load_corpus(in, warnings);
}

void save_corpus(const Corpus& corpus, std::ostream& out) {
    bool first_network = true;
    for (const auto& [id, net] : corpus.networks) {
        json rec = {{"type", "network"}, {"id", id}, {"rating_scale_max", net.rating_scale_max}};
        if (first_network) rec["categories"] = corpus.categories;
        first_network = false;
        out << rec.dump() << '\n';
    }
    if (corpus.networks.empty() && !corpus.categories.empty()) {
        // Categories travel on network records, so a corpus without networks cannot carry them.
        throw InvalidCorpus("cannot save categories without at least one network");
    }
    for (const auto& [id, obj] : corpus.objects) {
        json rec = {{"type", "object"}, {"id", id}, {"network", obj.network_id},
                    {"kind", std::string(to_string(obj.kind))}, {"title", obj.title}, {"tags", obj.tags},
                    {"genre", obj.genre}, {"description", obj.description}};
        if (obj.uploader) rec["uploader"] = *obj.uploader;
        rec["rating"] = obj.rating;
        rec["likes"] = obj.like_count;
        out << rec.dump() << '\n';
    }
    for (const auto& [id, net] : corpus.networks) {
        for (const auto& e : net.intra_edges) {
            json rec = {{"type", "intra_edge"}, {"network", id}, {"a", e.a}, {"b", e.b},
                        {"relation", std::string(to_string(e.relation))}};
            out << rec.dump() << '\n';
        }
    }
    for (const auto& l : corpus.interlink_candidates) {
        json rec = {{"type", "interlink"}, {"src", l.src}, {"dst", l.dst},
                    {"relation", std::string(to_string(l.relation))}};
        out << rec.dump() << '\n';
    }
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot write corpus file '" + path.string() + "'");
    save_corpus(corpus, out);
}

} // namespace fusionrank
