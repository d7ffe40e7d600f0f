#include "factcheck/labels/taxonomy.hpp"
#include "factcheck/labels/mapping_table.hpp"
#include "factcheck/unicode.hpp"

namespace factcheck::labels {

std::string_view name(VerdictClass c) {
  switch (c) {
    case VerdictClass::kTrue: return "true";
    case VerdictClass::kFalse: return "false";
    case VerdictClass::kPartiallyFalse: return "partially_false";
    case VerdictClass::kOther: return "other";
  }
  return "other";
}

std::string_view name(DomainClass c) {
  switch (c) {
    case DomainClass::kHealth: return "health";
    case DomainClass::kElection: return "election";
    case DomainClass::kCrime: return "crime";
    case DomainClass::kClimate: return "climate";
    case DomainClass::kEconomy: return "economy";
    case DomainClass::kEducation: return "education";
  }
  return "health";
}

std::optional<VerdictClass> parse_verdict_class(std::string_view s) {
  for (auto c : kAllVerdicts) {
    if (name(c) == s) return c;
  }
  return std::nullopt;
}

std::optional<DomainClass> parse_domain_class(std::string_view s) {
  for (auto c : kAllDomains) {
    if (name(c) == s) return c;
  }
  return std::nullopt;
}

std::string canonicalize_label(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char32_t cp : unicode::decode_utf8(raw)) {
    if (unicode::is_space(cp) || unicode::is_connector(cp)) {
      pending_space = !out.empty();
      continue;
    }
    cp = unicode::to_lower(cp);
    if (!unicode::is_alnum(cp)) continue;  // punctuation, symbols, marks
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    unicode::append_utf8(out, cp);
  }
  return out;
}

}  // namespace factcheck::labels
