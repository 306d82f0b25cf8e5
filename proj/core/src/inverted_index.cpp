#include "fusionrank/inverted_index.hpp"

#include "fusionrank/text.hpp"

#include <algorithm>
#include <map>
#include <ostream>

namespace fusionrank {

std::string_view to_string(Field field) {
    switch (field) {
    case Field::title: return "title";
    case Field::tags: return "tags";
    case Field::genre: return "genre";
    case Field::description: return "description";
    }
    return "?";
}

std::uint32_t InvertedIndex::doc_length(std::string_view object_id) const {
    auto doc = find_doc(object_id);
    return doc ? doc_lengths_[*doc] : 0;
}

std::optional<std::uint32_t> InvertedIndex::network_index(std::string_view network_id) const {
    auto it = std::lower_bound(networks_.begin(), networks_.end(), network_id);
    if (it == networks_.end() || *it != network_id) return std::nullopt;
    return static_cast<std::uint32_t>(it - networks_.begin());
}

std::optional<DocIndex> InvertedIndex::find_doc(std::string_view object_id) const {
    auto it = doc_lookup_.find(std::string(object_id));
    if (it == doc_lookup_.end()) return std::nullopt;
    return it->second;
}

std::span<const Posting> InvertedIndex::postings(std::string_view term) const {
    auto it = postings_.find(std::string(term));
    if (it == postings_.end()) return {};
    return it->second.postings;
}

std::uint32_t InvertedIndex::document_frequency(std::string_view term) const {
    auto it = postings_.find(std::string(term));
    return it == postings_.end() ? 0 : it->second.df;
}

std::vector<std::string> InvertedIndex::sorted_terms() const {
    std::vector<std::string> terms;
    terms.reserve(postings_.size());
    for (const auto& [term, _] : postings_) terms.push_back(term);
    std::sort(terms.begin(), terms.end());
    return terms;
}

void InvertedIndex::write_dump(std::ostream& out) const {
    for (const auto& term : sorted_terms()) {
        for (const auto& p : postings_.at(term).postings)
            out << term << '\t' << doc_ids_[p.doc] << '\t' << to_string(p.field) << '\t' << p.tf << '\n';
    }
}

InvertedIndex build_inverted_index(const Corpus& corpus) {
    InvertedIndex index;
    for (const auto& [id, _] : corpus.networks) index.networks_.push_back(id);

    const std::size_t n = corpus.objects.size();
    index.doc_ids_.reserve(n);
    index.doc_kinds_.reserve(n);
    index.doc_networks_.reserve(n);
    index.doc_lengths_.reserve(n);
    index.doc_lookup_.reserve(n);

    // Per-document term counts, keyed by (term, field) so postings come out field-ordered.
    std::map<std::pair<std::string, Field>, std::uint32_t> counts;
    for (const auto& [id, obj] : corpus.objects) {
        const auto doc = static_cast<DocIndex>(index.doc_ids_.size());
        index.doc_ids_.push_back(id);
        index.doc_kinds_.push_back(obj.kind);
        index.doc_networks_.push_back(index.network_index(obj.network_id).value_or(0));
        index.doc_lookup_.emplace(id, doc);

        counts.clear();
        std::uint32_t length = 0;
        auto add_text = [&](std::string_view text, Field field) {
            for (auto& token : tokenize(text)) {
                ++counts[{std::move(token), field}];
                ++length;
            }
        };
        add_text(obj.title, Field::title);
        for (const auto& tag : obj.tags) add_text(tag, Field::tags);
        add_text(obj.genre, Field::genre);
        add_text(obj.description, Field::description);
        index.doc_lengths_.push_back(length);

        const std::string* previous_term = nullptr;
        for (const auto& [key, tf] : counts) {
            auto& entry = index.postings_[key.first];
            entry.postings.push_back({doc, key.second, tf});
            if (!previous_term || *previous_term != key.first) ++entry.df;
            previous_term = &key.first;
        }
    }
    return index;
}

} // namespace fusionrank
