#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fusionrank {

struct Query {
    std::string raw;
    std::vector<std::string> terms;
    std::string id; // 16 hex digits of FNV-1a over the space-joined terms
};

/// Throws EmptyQuery when `raw` has no tokens.
Query make_query(std::string_view raw);

/// Normalizes every query and drops later duplicates (same terms in the same order).
/// First-occurrence order is kept. Throws EmptyQuery on any blank query.
std::vector<Query> canonicalize_queries(std::span<const std::string> raw);

} // namespace fusionrank
