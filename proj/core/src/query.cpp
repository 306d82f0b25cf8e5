#include "fusionrank/query.hpp"

#include "fusionrank/errors.hpp"
#include "fusionrank/text.hpp"

#include <cstdio>
#include <set>

namespace fusionrank {

Query make_query(std::string_view raw) {
    Query q;
    q.raw = std::string(raw);
    q.terms = tokenize(raw);
    if (q.terms.empty()) throw EmptyQuery("query '" + q.raw + "' has no terms");
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(join(q.terms, " "))));
    q.id = buf;
    return q;
}

std::vector<Query> canonicalize_queries(std::span<const std::string> raw) {
    std::vector<Query> out;
    std::set<std::vector<std::string>> seen;
    for (const auto& r : raw) {
        Query q = make_query(r);
        if (seen.insert(q.terms).second) out.push_back(std::move(q));
    }
    return out;
}

} // namespace fusionrank
