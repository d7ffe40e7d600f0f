#include "factcheck/ingest/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <initializer_list>
#include <optional>
#include <utility>

#include "factcheck/unicode.hpp"

namespace factcheck::ingest::html {
namespace {

template <std::size_t N>
bool in(std::string_view tag, const std::array<std::string_view, N>& set) {
  return std::find(set.begin(), set.end(), tag) != set.end();
}

constexpr std::array<std::string_view, 14> kVoid = {"area", "base", "br", "col", "embed", "hr", "img",
                                                    "input", "link", "meta", "param", "source", "track", "wbr"};

constexpr std::array<std::string_view, 30> kClosesP = {
    "address", "article", "aside", "blockquote", "details", "div", "dl", "fieldset", "figcaption", "figure",
    "footer", "form", "h1", "h2", "h3", "h4", "h5", "h6", "header", "hr",
    "main", "nav", "ol", "p", "pre", "section", "table", "ul", "li", "menu"};

constexpr std::array<std::string_view, 9> kScopeBoundary = {"html", "table", "td", "th", "caption",
                                                            "object", "template", "button", "marquee"};

constexpr std::array<std::string_view, 28> kInline = {
    "a", "abbr", "b", "bdi", "bdo", "cite", "code", "data", "dfn", "em", "font", "i", "kbd", "mark",
    "q", "s", "samp", "small", "span", "strong", "sub", "sup", "time", "u", "var", "label", "big", "tt"};

struct NamedEntity {
  std::string_view name;
  char32_t cp;
};

constexpr NamedEntity kEntities[] = {
    {"amp", U'&'},      {"lt", U'<'},       {"gt", U'>'},       {"quot", U'"'},     {"apos", U'\''},
    {"nbsp", 0xA0},     {"ndash", 0x2013},  {"mdash", 0x2014},  {"hellip", 0x2026}, {"lsquo", 0x2018},
    {"rsquo", 0x2019},  {"ldquo", 0x201C},  {"rdquo", 0x201D},  {"laquo", 0xAB},    {"raquo", 0xBB},
    {"copy", 0xA9},     {"reg", 0xAE},      {"trade", 0x2122},  {"euro", 0x20AC},   {"pound", 0xA3},
    {"cent", 0xA2},     {"deg", 0xB0},      {"middot", 0xB7},   {"bull", 0x2022},   {"times", 0xD7},
    {"divide", 0xF7},   {"eacute", 0xE9},   {"egrave", 0xE8},   {"aacute", 0xE1},   {"agrave", 0xE0},
    {"iacute", 0xED},   {"oacute", 0xF3},   {"uacute", 0xFA},   {"ntilde", 0xF1},   {"ccedil", 0xE7},
    {"uuml", 0xFC},     {"ouml", 0xF6},     {"auml", 0xE4},     {"szlig", 0xDF},    {"Eacute", 0xC9},
    {"Uuml", 0xDC},     {"Ouml", 0xD6},     {"Auml", 0xC4},     {"shy", 0xAD},      {"zwj", 0x200D},
};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool is_name_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '-' || c == ':' || c == '_' || c == '.';
}

std::size_t find_ci(std::string_view hay, std::string_view needle, std::size_t from) {
  for (std::size_t i = from; i + needle.size() <= hay.size(); ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < needle.size(); ++j) {
      if (std::tolower(static_cast<unsigned char>(hay[i + j])) != needle[j]) {
        ok = false;
        break;
      }
    }
    if (ok) return i;
  }
  return std::string_view::npos;
}

}  // namespace

const std::string* Node::attribute(std::string_view name) const {
  for (const auto& [k, v] : attributes) {
    if (k == name) return &v;
  }
  return nullptr;
}

bool Node::has_class(std::string_view cls) const {
  const std::string* value = attribute("class");
  if (!value) return false;
  std::string_view rest = *value;
  while (!rest.empty()) {
    const auto start = rest.find_first_not_of(" \t\n\r\f");
    if (start == std::string_view::npos) break;
    rest.remove_prefix(start);
    const auto end = rest.find_first_of(" \t\n\r\f");
    if (rest.substr(0, end) == cls) return true;
    if (end == std::string_view::npos) break;
    rest.remove_prefix(end);
  }
  return false;
}

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c != '&') {
      out.push_back(c);
      ++i;
      continue;
    }
    const auto semi = text.find(';', i + 1);
    if (i + 1 < text.size() && text[i + 1] == '#' && semi != std::string_view::npos && semi - i <= 10) {
      std::string_view digits = text.substr(i + 2, semi - i - 2);
      int base = 10;
      if (!digits.empty() && (digits.front() == 'x' || digits.front() == 'X')) {
        base = 16;
        digits.remove_prefix(1);
      }
      std::uint32_t value = 0;
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value, base);
      if (!digits.empty() && ec == std::errc() && ptr == digits.data() + digits.size()) {
        const bool valid = value != 0 && value <= 0x10FFFF && !(value >= 0xD800 && value <= 0xDFFF);
        unicode::append_utf8(out, valid ? static_cast<char32_t>(value) : unicode::kReplacement);
        i = semi + 1;
        continue;
      }
    } else if (semi != std::string_view::npos && semi - i <= 10) {
      const std::string_view name = text.substr(i + 1, semi - i - 1);
      bool found = false;
      for (const auto& e : kEntities) {
        if (e.name == name) {
          unicode::append_utf8(out, e.cp);
          found = true;
          break;
        }
      }
      if (found) {
        i = semi + 1;
        continue;
      }
    }
    // a few legacy entities are recognized without the semicolon
    bool legacy = false;
    for (const auto& [name, cp] : {std::pair<std::string_view, char32_t>{"amp", U'&'}, {"lt", U'<'}, {"gt", U'>'},
                                   {"quot", U'"'}, {"nbsp", 0xA0}, {"copy", 0xA9}}) {
      if (text.substr(i + 1, name.size()) != name) continue;
      const std::size_t after = i + 1 + name.size();
      if (after < text.size() && (std::isalnum(static_cast<unsigned char>(text[after])) || text[after] == '=')) continue;
      unicode::append_utf8(out, cp);
      i = after;
      legacy = true;
      break;
    }
    if (legacy) continue;
    out.push_back('&');
    ++i;
  }
  return out;
}

class TreeBuilder {
 public:
  explicit TreeBuilder(Document& doc) : doc_(doc) {
    doc_.nodes_.clear();
    Node root;
    root.kind = Node::Kind::kDocument;
    doc_.nodes_.push_back(std::move(root));
    stack_.push_back(0);
  }

  void run(std::string_view html) {
    std::size_t i = 0;
    const std::size_t n = html.size();
    while (i < n) {
      if (html[i] != '<') {
        const auto next = html.find('<', i);
        const auto end = next == std::string_view::npos ? n : next;
        add_text(decode_entities(html.substr(i, end - i)));
        i = end;
        continue;
      }
      if (html.compare(i, 4, "<!--") == 0) {
        const auto close = html.find("-->", i + 4);
        i = close == std::string_view::npos ? n : close + 3;
        continue;
      }
      if (i + 1 < n && (html[i + 1] == '!' || html[i + 1] == '?')) {
        const auto close = html.find('>', i);
        i = close == std::string_view::npos ? n : close + 1;
        continue;
      }
      if (i + 1 < n && html[i + 1] == '/') {
        std::size_t j = i + 2;
        while (j < n && is_name_char(html[j])) ++j;
        const std::string name = lower(html.substr(i + 2, j - i - 2));
        const auto close = html.find('>', j);
        i = close == std::string_view::npos ? n : close + 1;
        if (!name.empty()) end_tag(name);
        continue;
      }
      if (i + 1 < n && std::isalpha(static_cast<unsigned char>(html[i + 1]))) {
        i = start_tag(html, i);
        continue;
      }
      add_text("<");
      ++i;
    }
  }

 private:
  NodeId current() const { return stack_.back(); }

  NodeId append(Node node) {
    node.parent = current();
    const NodeId id = doc_.nodes_.size();
    doc_.nodes_.push_back(std::move(node));
    doc_.nodes_[current()].children.push_back(id);
    return id;
  }

  void add_text(std::string text) {
    if (text.empty()) return;
    auto& parent = doc_.nodes_[current()];
    if (!parent.children.empty()) {
      auto& last = doc_.nodes_[parent.children.back()];
      if (last.kind == Node::Kind::kText) {
        last.text += text;
        return;
      }
    }
    Node node;
    node.kind = Node::Kind::kText;
    node.text = std::move(text);
    append(std::move(node));
  }

  // Index in stack_ of the nearest open `tag`, not crossing a boundary.
  std::optional<std::size_t> open_in_scope(std::string_view tag,
                                           std::initializer_list<std::string_view> boundary) const {
    for (std::size_t k = stack_.size(); k-- > 1;) {
      const auto& t = doc_.nodes_[stack_[k]].tag;
      if (t == tag) return k;
      if (in(t, kScopeBoundary)) return std::nullopt;
      if (std::find(boundary.begin(), boundary.end(), t) != boundary.end()) return std::nullopt;
    }
    return std::nullopt;
  }

  void pop_to(std::size_t index) { stack_.resize(index); }

  void implied_end(const std::string& tag) {
    if (in(tag, kClosesP)) {
      if (auto k = open_in_scope("p", {})) pop_to(*k);
    }
    if (tag == "li") {
      if (auto k = open_in_scope("li", {"ul", "ol", "menu"})) pop_to(*k);
    } else if (tag == "dt" || tag == "dd") {
      if (auto k = open_in_scope("dd", {"dl"})) pop_to(*k);
      if (auto k = open_in_scope("dt", {"dl"})) pop_to(*k);
    } else if (tag == "tr") {
      for (auto cell : {"td", "th"}) {
        if (auto k = open_in_scope(cell, {"table"})) pop_to(*k);
      }
      if (auto k = open_in_scope("tr", {"table", "tbody", "thead", "tfoot"})) pop_to(*k);
    } else if (tag == "td" || tag == "th") {
      if (auto k = open_in_scope("td", {"tr"})) pop_to(*k);
      if (auto k = open_in_scope("th", {"tr"})) pop_to(*k);
    } else if (tag == "option") {
      if (doc_.nodes_[current()].tag == "option") stack_.pop_back();
    }
  }

  std::size_t start_tag(std::string_view html, std::size_t i) {
    const std::size_t n = html.size();
    std::size_t j = i + 1;
    while (j < n && is_name_char(html[j])) ++j;
    Node node;
    node.tag = lower(html.substr(i + 1, j - i - 1));
    bool self_closing = false;

    while (j < n) {
      while (j < n && std::isspace(static_cast<unsigned char>(html[j]))) ++j;
      if (j >= n) break;
      if (html[j] == '>') {
        ++j;
        break;
      }
      if (html[j] == '/') {
        self_closing = j + 1 < n && html[j + 1] == '>';
        ++j;
        continue;
      }
      std::size_t k = j;
      while (k < n && !std::isspace(static_cast<unsigned char>(html[k])) && html[k] != '=' && html[k] != '>' &&
             !(html[k] == '/' && k + 1 < n && html[k + 1] == '>')) {
        ++k;
      }
      std::string name = lower(html.substr(j, k - j));
      if (name.empty()) {  // stray '=' or similar
        j = k + 1;
        continue;
      }
      j = k;
      while (j < n && std::isspace(static_cast<unsigned char>(html[j]))) ++j;
      std::string value;
      if (j < n && html[j] == '=') {
        ++j;
        while (j < n && std::isspace(static_cast<unsigned char>(html[j]))) ++j;
        if (j < n && (html[j] == '"' || html[j] == '\'')) {
          const char quote = html[j];
          const auto close = html.find(quote, j + 1);
          const auto end = close == std::string_view::npos ? n : close;
          value = decode_entities(html.substr(j + 1, end - j - 1));
          j = end == n ? n : end + 1;
        } else {
          std::size_t v = j;
          while (v < n && !std::isspace(static_cast<unsigned char>(html[v])) && html[v] != '>') ++v;
          value = decode_entities(html.substr(j, v - j));
          j = v;
        }
      }
      if (!node.attribute(name)) node.attributes.emplace_back(std::move(name), std::move(value));
    }

    implied_end(node.tag);
    const std::string tag = node.tag;
    const NodeId id = append(std::move(node));

    if (tag == "script" || tag == "style" || tag == "textarea" || tag == "title" || tag == "noscript") {
      const std::string closer = "</" + tag;
      const auto close = find_ci(html, closer, j);
      const auto end = close == std::string_view::npos ? n : close;
      if (tag == "textarea" || tag == "title") {
        stack_.push_back(id);
        add_text(decode_entities(html.substr(j, end - j)));
        stack_.pop_back();
      }
      if (close == std::string_view::npos) return n;
      const auto gt = html.find('>', close);
      return gt == std::string_view::npos ? n : gt + 1;
    }
    if (!self_closing && !in(tag, kVoid)) stack_.push_back(id);
    return j;
  }

  void end_tag(const std::string& tag) {
    for (std::size_t k = stack_.size(); k-- > 1;) {
      if (doc_.nodes_[stack_[k]].tag == tag) {
        pop_to(k);
        return;
      }
    }
  }

  Document& doc_;
  std::vector<NodeId> stack_;
};

Document Document::parse(std::string_view html) {
  Document doc;
  TreeBuilder builder(doc);
  builder.run(html);
  return doc;
}

std::string Document::text_content(NodeId id) const {
  std::string raw;
  // iterative pre-order; separators mark block boundaries
  struct Frame {
    NodeId id;
    bool closing;
  };
  std::vector<Frame> todo{{id, false}};
  while (!todo.empty()) {
    const Frame f = todo.back();
    todo.pop_back();
    const Node& node = nodes_[f.id];
    if (node.kind == Node::Kind::kText) {
      raw += node.text;
      continue;
    }
    const bool block = node.kind == Node::Kind::kElement && !in(node.tag, kInline);
    if (f.closing) {
      if (block) raw.push_back(' ');
      continue;
    }
    if (block) raw.push_back(' ');
    todo.push_back({f.id, true});
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) todo.push_back({*it, false});
  }
  return unicode::collapse_whitespace(raw);
}

std::vector<NodeId> Document::elements() const {
  std::vector<NodeId> out;
  std::vector<NodeId> todo{root()};
  while (!todo.empty()) {
    const NodeId id = todo.back();
    todo.pop_back();
    if (nodes_[id].kind == Node::Kind::kElement) out.push_back(id);
    const auto& ch = nodes_[id].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) todo.push_back(*it);
  }
  return out;
}

}  // namespace factcheck::ingest::html
