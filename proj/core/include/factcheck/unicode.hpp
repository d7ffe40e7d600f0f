#pragma once

#include <string>
#include <string_view>

namespace factcheck::unicode {

inline constexpr char32_t kReplacement = U'\uFFFD';

/// Decodes UTF-8, replacing each invalid or truncated sequence with U+FFFD.
std::u32string decode_utf8(std::string_view bytes);

std::string encode_utf8(std::u32string_view text);
void append_utf8(std::string& out, char32_t cp);

/// Round-trips through decode/encode so the result is always valid UTF-8.
std::string sanitize_utf8(std::string_view bytes);

// Character classes backed by the C.UTF-8 locale tables; ASCII-only if that
// locale is unavailable.
bool is_alnum(char32_t cp);
bool is_space(char32_t cp);
char32_t to_lower(char32_t cp);

/// Hyphens, dashes, slashes and underscores: punctuation that separates words.
bool is_connector(char32_t cp);

/// Collapses runs of whitespace to one ASCII space and trims both ends.
std::string collapse_whitespace(std::string_view utf8);

}  // namespace factcheck::unicode
