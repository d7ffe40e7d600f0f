#include "factcheck/ingest/selector.hpp"

#include <algorithm>

#include <cctype>

#include "factcheck/error.hpp"
#include "factcheck/unicode.hpp"

namespace factcheck::ingest {
namespace {

bool is_ident(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '-' || c == '_' || c == ':' || u >= 0x80;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits on `sep` outside brackets and quotes.
std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  int depth = 0;
  char quote = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '[') {
      ++depth;
    } else if (c == ']') {
      --depth;
    } else if (c == sep && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(s.substr(start));
  return parts;
}

[[noreturn]] void fail(std::string_view source, const std::string& why) {
  throw ParseError("selector '" + std::string(source) + "': " + why);
}

}  // namespace

SelectorPath SelectorPath::parse(std::string_view text) {
  SelectorPath out;
  out.source_ = std::string(text);
  if (trim(text).empty()) fail(text, "empty");

  for (std::string_view alt_text : split_top(text, ',')) {
    alt_text = trim(alt_text);
    if (alt_text.empty()) fail(text, "empty alternative");
    Alternative alt;

    // trailing @attribute
    const auto parts = split_top(alt_text, '@');
    if (parts.size() > 2) fail(text, "more than one '@'");
    if (parts.size() == 2) {
      const std::string_view attr = trim(parts[1]);
      if (attr.empty()) fail(text, "empty attribute after '@'");
      for (char c : attr) {
        if (!is_ident(c)) fail(text, "bad attribute name '" + std::string(attr) + "'");
      }
      alt.attribute = lower(attr);
      alt_text = trim(parts[0]);
    }

    std::size_t i = 0;
    const std::size_t n = alt_text.size();
    bool pending_child = false;
    while (i < n) {
      const char c = alt_text[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (c == '>') {
        if (alt.compounds.empty() || pending_child) fail(text, "dangling '>'");
        pending_child = true;
        ++i;
        continue;
      }
      Compound compound;
      compound.child_of_previous = pending_child;
      pending_child = false;
      if (c == '*') {
        ++i;
      } else if (is_ident(c)) {
        const std::size_t start = i;
        while (i < n && is_ident(alt_text[i])) ++i;
        compound.tag = lower(alt_text.substr(start, i - start));
      }
      while (i < n && !std::isspace(static_cast<unsigned char>(alt_text[i])) && alt_text[i] != '>') {
        const char k = alt_text[i];
        if (k == '#' || k == '.') {
          const std::size_t start = ++i;
          while (i < n && is_ident(alt_text[i])) ++i;
          if (i == start) fail(text, std::string("empty name after '") + k + "'");
          auto name = std::string(alt_text.substr(start, i - start));
          (k == '#' ? compound.ids : compound.classes).push_back(std::move(name));
        } else if (k == '[') {
          const auto end = alt_text.find(']', i);
          if (end == std::string_view::npos) fail(text, "unterminated '['");
          std::string_view body = trim(alt_text.substr(i + 1, end - i - 1));
          AttrTest test;
          const auto eq = body.find('=');
          if (eq == std::string_view::npos) {
            test.name = lower(body);
          } else {
            std::string_view name = body.substr(0, eq);
            if (!name.empty() && std::string_view("~^$*").find(name.back()) != std::string_view::npos) {
              test.op = name.back();
              name.remove_suffix(1);
            } else {
              test.op = '=';
            }
            test.name = lower(trim(name));
            std::string_view value = trim(body.substr(eq + 1));
            if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front()) {
              value = value.substr(1, value.size() - 2);
            }
            test.value = std::string(value);
          }
          if (test.name.empty()) fail(text, "empty attribute test");
          if (!std::all_of(test.name.begin(), test.name.end(), is_ident)) {
            fail(text, "bad attribute name '" + test.name + "'");
          }
          compound.attrs.push_back(std::move(test));
          i = end + 1;
        } else {
          fail(text, std::string("unexpected character '") + k + "'");
        }
      }
      alt.compounds.push_back(std::move(compound));
    }
    if (alt.compounds.empty()) fail(text, "no element selector");
    if (pending_child) fail(text, "dangling '>'");
    out.alternatives_.push_back(std::move(alt));
  }
  return out;
}

bool SelectorPath::matches(const html::Document& doc, html::NodeId id, const Compound& c) {
  const html::Node& node = doc.node(id);
  if (node.kind != html::Node::Kind::kElement) return false;
  if (!c.tag.empty() && node.tag != c.tag) return false;
  for (const auto& want : c.ids) {
    const std::string* v = node.attribute("id");
    if (!v || *v != want) return false;
  }
  for (const auto& cls : c.classes) {
    if (!node.has_class(cls)) return false;
  }
  for (const auto& t : c.attrs) {
    const std::string* v = node.attribute(t.name);
    if (!v) return false;
    const std::string_view have = *v;
    switch (t.op) {
      case 0: break;
      case '=': if (have != t.value) return false; break;
      case '^': if (!have.starts_with(t.value)) return false; break;
      case '$': if (!have.ends_with(t.value)) return false; break;
      case '*': if (have.find(t.value) == std::string_view::npos) return false; break;
      case '~': {
        bool found = false;
        std::size_t pos = 0;
        while (pos <= have.size()) {
          auto sp = have.find(' ', pos);
          if (sp == std::string_view::npos) sp = have.size();
          if (have.substr(pos, sp - pos) == t.value) {
            found = true;
            break;
          }
          pos = sp + 1;
        }
        if (!found) return false;
        break;
      }
      default: return false;
    }
  }
  return true;
}

bool SelectorPath::matches_chain(const html::Document& doc, html::NodeId id,
                                 const std::vector<Compound>& chain, std::size_t index) {
  if (!matches(doc, id, chain[index])) return false;
  if (index == 0) return true;
  html::NodeId up = doc.node(id).parent;
  if (chain[index].child_of_previous) {
    return up != html::kNoNode && matches_chain(doc, up, chain, index - 1);
  }
  for (; up != html::kNoNode; up = doc.node(up).parent) {
    if (matches_chain(doc, up, chain, index - 1)) return true;
  }
  return false;
}

std::vector<std::string> SelectorPath::select(const html::Document& doc) const {
  const auto elements = doc.elements();
  for (const auto& alt : alternatives_) {
    std::vector<std::string> values;
    for (html::NodeId id : elements) {
      if (!matches_chain(doc, id, alt.compounds, alt.compounds.size() - 1)) continue;
      std::string value;
      if (alt.attribute) {
        const std::string* v = doc.node(id).attribute(*alt.attribute);
        if (!v) continue;
        value = unicode::collapse_whitespace(*v);
      } else {
        value = doc.text_content(id);
      }
      if (!value.empty()) values.push_back(std::move(value));
    }
    if (!values.empty()) return values;
  }
  return {};
}

std::optional<std::string> SelectorPath::first(const html::Document& doc) const {
  auto values = select(doc);
  if (values.empty()) return std::nullopt;
  return std::move(values.front());
}

}  // namespace factcheck::ingest
