#include "fusionrank/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>

namespace fusionrank {

std::string_view to_string(Level level) {
    switch (level) {
    case Level::Low: return "Low";
    case Level::Medium: return "Medium";
    case Level::High: return "High";
    }
    return "?";
}

std::optional<Level> parse_level(std::string_view name) {
    std::string lowered(name);
    for (char& c : lowered) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lowered == "high" || lowered == "h") return Level::High;
    if (lowered == "medium" || lowered == "m") return Level::Medium;
    if (lowered == "low" || lowered == "l") return Level::Low;
    return std::nullopt;
}

double dcg_at_k(std::span<const int> grades, std::size_t k) {
    double dcg = 0.0;
    const std::size_t n = std::min(k, grades.size());
    for (std::size_t i = 0; i < n; ++i) {
        const double g = grades[i];
        dcg += i == 0 ? g : g / std::log2(static_cast<double>(i + 1));
    }
    return dcg;
}

double ndcg_at_k(std::span<const int> grades, std::size_t k) {
    std::vector<int> ideal(grades.begin(), grades.end());
    std::sort(ideal.begin(), ideal.end(), std::greater<>());
    const double best = dcg_at_k(ideal, k);
    if (best == 0.0) return 1.0;
    return dcg_at_k(grades, k) / best;
}

std::vector<double> ndcg_curve(std::span<const int> grades, std::size_t k) {
    std::vector<double> out;
    out.reserve(k);
    for (std::size_t i = 1; i <= k; ++i) out.push_back(ndcg_at_k(grades, i));
    return out;
}

} // namespace fusionrank
