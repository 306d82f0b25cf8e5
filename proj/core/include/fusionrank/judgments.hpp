#pragma once

#include "fusionrank/metrics.hpp"
#include "fusionrank/query.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fusionrank {

struct Judgment {
    std::string query; // normalized query text
    std::string object_id;
    Level content = Level::Low;
    Level interest = Level::Low;
};

/// At most one judgment per (query, object). Unjudged pairs grade as (Low, Low).
class JudgmentSet {
public:
    /// Throws DataError when the pair is already judged.
    void add(const Query& q, std::string object_id, Level content, Level interest);

    std::size_t size() const { return judgments_.size(); }
    bool empty() const { return judgments_.empty(); }

    const Judgment* find(std::string_view query_id, std::string_view object_id) const;
    Grade grade(std::string_view query_id, std::string_view object_id) const;

    /// True when some judged object of the query has a positive grade.
    bool has_relevant(std::string_view query_id) const;

    /// Judgments in (query id, object id) order.
    std::vector<Judgment> all() const;

private:
    std::map<std::pair<std::string, std::string>, Judgment> judgments_;
};

/// Tab-separated lines: query text, object id, content level, interest level.
/// Blank lines and lines starting with '#' are skipped.
JudgmentSet parse_judgments(std::istream& in);
JudgmentSet load_judgments(const std::filesystem::path& path);
void save_judgments(const JudgmentSet& judgments, std::ostream& out);
void save_judgments(const JudgmentSet& judgments, const std::filesystem::path& path);

/// One query per line; blank lines are skipped.
std::vector<std::string> load_query_lines(const std::filesystem::path& path);

} // namespace fusionrank
