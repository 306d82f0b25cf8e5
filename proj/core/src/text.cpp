#include "fusionrank/text.hpp"

namespace fusionrank {

namespace {

constexpr bool is_alnum(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

constexpr char to_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

template <typename Sink>
void for_each_token(std::string_view text, Sink&& sink) {
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && !is_alnum(text[i])) ++i;
        const std::size_t start = i;
        while (i < text.size() && is_alnum(text[i])) ++i;
        if (i > start) sink(text.substr(start, i - start));
    }
}

} // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    for_each_token(text, [&](std::string_view tok) {
        std::string lowered(tok);
        for (char& c : lowered) c = to_lower(c);
        tokens.push_back(std::move(lowered));
    });
    return tokens;
}

std::size_t count_tokens(std::string_view text) {
    std::size_t n = 0;
    for_each_token(text, [&](std::string_view) { ++n; });
    return n;
}

std::string normalize_text(std::string_view text) {
    const auto tokens = tokenize(text);
    return join(tokens, " ");
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string join(std::span<const std::string> parts, std::string_view separator) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += separator;
        out += parts[i];
    }
    return out;
}

} // namespace fusionrank
