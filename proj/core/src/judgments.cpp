#include "fusionrank/judgments.hpp"

#include "fusionrank/errors.hpp"
#include "fusionrank/text.hpp"

#include <fstream>
#include <sstream>

namespace fusionrank {

void JudgmentSet::add(const Query& q, std::string object_id, Level content, Level interest) {
    if (judgments_.contains({q.id, object_id}))
        throw DataError("pair (" + q.raw + ", " + object_id + ") judged twice");
    auto key = std::make_pair(q.id, object_id);
    judgments_.emplace(std::move(key), Judgment{join(q.terms, " "), std::move(object_id), content, interest});
}

const Judgment* JudgmentSet::find(std::string_view query_id, std::string_view object_id) const {
    auto it = judgments_.find({std::string(query_id), std::string(object_id)});
    return it == judgments_.end() ? nullptr : &it->second;
}

Grade JudgmentSet::grade(std::string_view query_id, std::string_view object_id) const {
    const Judgment* j = find(query_id, object_id);
    return j ? grade_relevance(j->content, j->interest) : Grade{0};
}

bool JudgmentSet::has_relevant(std::string_view query_id) const {
    auto it = judgments_.lower_bound({std::string(query_id), std::string()});
    for (; it != judgments_.end() && it->first.first == query_id; ++it)
        if (grade_relevance(it->second.content, it->second.interest).value > 0) return true;
    return false;
}

std::vector<Judgment> JudgmentSet::all() const {
    std::vector<Judgment> out;
    out.reserve(judgments_.size());
    for (const auto& [_, j] : judgments_) out.push_back(j);
    return out;
}

JudgmentSet parse_judgments(std::istream& in) {
    JudgmentSet set;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> cols;
        std::istringstream fields(line);
        for (std::string col; std::getline(fields, col, '\t');) cols.push_back(col);
        if (cols.size() != 4) throw MalformedRecord(line_no, "expected 4 tab-separated columns");
        auto content = parse_level(cols[2]);
        auto interest = parse_level(cols[3]);
        if (!content || !interest) throw MalformedRecord(line_no, "unknown relevance level");
        try {
            set.add(make_query(cols[0]), cols[1], *content, *interest);
        } catch (const DataError& e) {
            throw MalformedRecord(line_no, e.what());
        }
    }
    return set;
}

JudgmentSet load_judgments(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open judgments file '" + path.string() + "'");
    return parse_judgments(in);
}

void save_judgments(const JudgmentSet& judgments, std::ostream& out) {
    for (const auto& j : judgments.all())
        out << j.query << '\t' << j.object_id << '\t' << to_string(j.content) << '\t' << to_string(j.interest) << '\n';
}

void save_judgments(const JudgmentSet& judgments, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot write judgments file '" + path.string() + "'");
    save_judgments(judgments, out);
}

std::vector<std::string> load_query_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open queries file '" + path.string() + "'");
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        lines.push_back(line);
    }
    return lines;
}

} // namespace fusionrank
