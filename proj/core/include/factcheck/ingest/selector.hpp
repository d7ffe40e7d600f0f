#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "factcheck/ingest/html.hpp"

namespace factcheck::ingest {

/// A compiled selector path: a CSS subset used by site profiles.
///
///   path        := alternative ("," alternative)*
///   alternative := compound ((" " | ">") compound)* ["@" attribute]
///   compound    := [tag | "*"] ("#" id | "." class | "[" attr [op value] "]")*
///   op          := "=" | "~=" | "^=" | "$=" | "*="
///
/// Alternatives are tried left to right; the first that matches anything
/// wins. A trailing "@attr" selects that attribute's value instead of the
/// element's text.
class SelectorPath {
 public:
  /// Throws ParseError on malformed input.
  static SelectorPath parse(std::string_view text);

  /// Matched values (text or attribute) in document order, from the first
  /// alternative with any match. Empty values are dropped.
  std::vector<std::string> select(const html::Document& doc) const;

  std::optional<std::string> first(const html::Document& doc) const;

  const std::string& source() const { return source_; }

 private:
  struct AttrTest {
    std::string name;
    char op = 0;  // 0 = presence, '=', '~', '^', '$', '*'
    std::string value;
  };
  struct Compound {
    std::string tag;  // empty = any
    std::vector<std::string> ids;
    std::vector<std::string> classes;
    std::vector<AttrTest> attrs;
    bool child_of_previous = false;  // '>' combinator before this compound
  };
  struct Alternative {
    std::vector<Compound> compounds;
    std::optional<std::string> attribute;
  };

  static bool matches(const html::Document& doc, html::NodeId id, const Compound& c);
  static bool matches_chain(const html::Document& doc, html::NodeId id,
                            const std::vector<Compound>& chain, std::size_t index);

  std::string source_;
  std::vector<Alternative> alternatives_;
};

}  // namespace factcheck::ingest
