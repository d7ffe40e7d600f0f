#include "factcheck/text/text_prep.hpp"

#include "factcheck/unicode.hpp"

namespace factcheck::text {

CleanText clean_text(std::string_view text) {
  CleanText out;
  out.text.reserve(text.size());
  bool pending_space = false;
  for (char32_t cp : unicode::decode_utf8(text)) {
    cp = unicode::to_lower(cp);
    if (!unicode::is_alnum(cp)) {
      pending_space = !out.text.empty();
      continue;
    }
    if (pending_space) {
      out.text.push_back(' ');
      pending_space = false;
    }
    unicode::append_utf8(out.text, cp);
  }
  return out;
}

CleanText clean_text(std::string_view title, std::string_view body) {
  std::string joined;
  joined.reserve(title.size() + body.size() + 1);
  joined.append(title);
  joined.push_back(' ');
  joined.append(body);
  return clean_text(joined);
}

TokenSeq tokenize(const CleanText& clean) {
  TokenSeq tokens;
  std::string_view rest = clean.text;
  while (!rest.empty()) {
    const auto sp = rest.find(' ');
    tokens.emplace_back(rest.substr(0, sp));
    if (sp == std::string_view::npos) break;
    rest.remove_prefix(sp + 1);
  }
  return tokens;
}

}  // namespace factcheck::text
