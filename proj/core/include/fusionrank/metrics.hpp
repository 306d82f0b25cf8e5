#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fusionrank {

enum class Level { Low, Medium, High };

std::string_view to_string(Level level);
/// Accepts High/Medium/Low in any case, or H/M/L.
std::optional<Level> parse_level(std::string_view name);

/// A relevance grade from the content x interest table: 0, 2, 3 or 5.
struct Grade {
    int value = 0;

    friend bool operator==(const Grade&, const Grade&) = default;
};

/// (High, High) 5, (High, Medium) and (Medium, High) 3, (Medium, Medium) 2, any Low 0.
constexpr Grade grade_relevance(Level content, Level interest) {
    if (content == Level::Low || interest == Level::Low) return {0};
    if (content == Level::High && interest == Level::High) return {5};
    if (content == Level::Medium && interest == Level::Medium) return {2};
    return {3};
}

/// g_1 + sum_{i=2..k} g_i / log2(i). Lists shorter than k are padded with zeros.
double dcg_at_k(std::span<const int> grades, std::size_t k);

/// DCG of `grades` over DCG of the same grades sorted descending; 1 when the latter is 0.
double ndcg_at_k(std::span<const int> grades, std::size_t k);

struct NdcgCurve {
    std::string method;
    std::vector<double> values; // values[i] is NDCG at position i + 1

    double at(std::size_t k) const { return values.at(k - 1); }
};

/// NDCG at 1..k for one ranked grade list.
std::vector<double> ndcg_curve(std::span<const int> grades, std::size_t k);

} // namespace fusionrank
