#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace factcheck::ingest {

/// charset parameter of a Content-Type value, lowercased.
std::optional<std::string> charset_from_content_type(std::string_view content_type);

/// <meta charset> or http-equiv declaration within the first 1024 bytes.
std::optional<std::string> sniff_meta_charset(std::string_view html);

/// Converts `bytes` in `charset` to UTF-8. Unknown charsets are treated as
/// UTF-8; undecodable bytes become U+FFFD. Never throws on bad input.
std::string to_utf8(std::string_view bytes, std::string_view charset);

}  // namespace factcheck::ingest
