#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace factcheck::text {

/// Lowercase letters, digits and single spaces only; no leading or trailing
/// space.
struct CleanText {
  std::string text;
  friend bool operator==(const CleanText&, const CleanText&) = default;
};

using TokenSeq = std::vector<std::string>;

/// Cleans title + " " + body: lowercase, every non-alphanumeric code point
/// becomes a space, whitespace collapsed and trimmed.
CleanText clean_text(std::string_view title, std::string_view body);

/// Cleans a single string with the same rule.
CleanText clean_text(std::string_view text);

TokenSeq tokenize(const CleanText& clean);

}  // namespace factcheck::text
