#pragma once

#include "fusionrank/corpus.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fusionrank {

enum class Field : std::uint8_t { title, tags, genre, description };

std::string_view to_string(Field field);

using DocIndex = std::uint32_t;

struct Posting {
    DocIndex doc;
    Field field;
    std::uint32_t tf;

    friend bool operator==(const Posting&, const Posting&) = default;
};

/// Term -> (document, field, term frequency) over the title, tags, genre and description
/// of every object. Documents are numbered densely in ascending object-id order.
/// Immutable once built.
class InvertedIndex {
public:
    std::size_t doc_count() const { return doc_ids_.size(); }
    std::size_t term_count() const { return postings_.size(); }

    const std::string& doc_id(DocIndex doc) const { return doc_ids_[doc]; }
    ObjectKind doc_kind(DocIndex doc) const { return doc_kinds_[doc]; }
    std::uint32_t doc_network(DocIndex doc) const { return doc_networks_[doc]; }
    std::uint32_t doc_length(DocIndex doc) const { return doc_lengths_[doc]; }
    std::uint32_t doc_length(std::string_view object_id) const;

    /// Network ids in ascending order; doc_network() indexes into this.
    std::span<const std::string> networks() const { return networks_; }
    std::optional<std::uint32_t> network_index(std::string_view network_id) const;

    std::optional<DocIndex> find_doc(std::string_view object_id) const;

    /// Postings of `term` sorted by (doc, field); empty when the term is absent.
    std::span<const Posting> postings(std::string_view term) const;

    /// Number of distinct documents containing `term`.
    std::uint32_t document_frequency(std::string_view term) const;

    /// All terms in ascending byte order.
    std::vector<std::string> sorted_terms() const;

    /// Tab-separated dump, one posting per line (term, object id, field, tf), fully sorted.
    void write_dump(std::ostream& out) const;

    friend InvertedIndex build_inverted_index(const Corpus& corpus);

private:
    struct TermEntry {
        std::vector<Posting> postings;
        std::uint32_t df = 0;
    };

    std::vector<std::string> doc_ids_;
    std::vector<ObjectKind> doc_kinds_;
    std::vector<std::uint32_t> doc_networks_;
    std::vector<std::uint32_t> doc_lengths_;
    std::vector<std::string> networks_;
    std::unordered_map<std::string, DocIndex> doc_lookup_;
    std::unordered_map<std::string, TermEntry> postings_;
};

InvertedIndex build_inverted_index(const Corpus& corpus);

} // namespace fusionrank
