#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fusionrank {

/// Lowercases ASCII letters and splits on every byte that is not an ASCII letter or digit.
/// Empty tokens are dropped. Non-ASCII bytes act as separators.
std::vector<std::string> tokenize(std::string_view text);

std::size_t count_tokens(std::string_view text);

/// Tokens joined by single spaces.
std::string normalize_text(std::string_view text);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

std::string join(std::span<const std::string> parts, std::string_view separator);

} // namespace fusionrank
