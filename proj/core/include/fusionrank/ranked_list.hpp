#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fusionrank {

struct ComponentBreakdown {
    double text = 0.0;
    double rank = 0.0;
    double pop = 0.0;
};

struct RankedEntry {
    std::string object_id;
    double score = 0.0;
    ComponentBreakdown components;
};

/// Entries sorted by score descending, ties by ascending object id.
struct RankedList {
    std::string query_id;
    std::vector<RankedEntry> entries;
    bool upstream_nonconverged = false;

    std::vector<std::string> ids() const {
        std::vector<std::string> out;
        out.reserve(entries.size());
        for (const auto& e : entries) out.push_back(e.object_id);
        return out;
    }
};

/// Restricts which indexed objects may appear in a result list.
struct CandidateFilter {
    std::optional<std::string> network; // only objects owned by this network
    bool include_users = false;
};

} // namespace fusionrank
