#include "factcheck/ingest/url.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "factcheck/error.hpp"

namespace factcheck::ingest {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string remove_dot_segments(std::string_view input) {
  std::vector<std::string_view> segments;
  std::size_t pos = 0;
  // input always begins with '/'
  while (pos < input.size()) {
    std::size_t next = input.find('/', pos + 1);
    if (next == std::string_view::npos) next = input.size();
    std::string_view seg = input.substr(pos + 1, next - pos - 1);
    const bool last = next == input.size();
    if (seg == ".") {
      if (last) segments.emplace_back("");
    } else if (seg == "..") {
      if (!segments.empty()) segments.pop_back();
      if (last) segments.emplace_back("");
    } else {
      segments.push_back(seg);
    }
    pos = next;
  }
  std::string out;
  for (auto seg : segments) {
    out.push_back('/');
    out.append(seg);
  }
  return out.empty() ? "/" : out;
}

bool is_tracking_param(std::string_view key) {
  const std::string k = lower(key);
  return k.starts_with("utm_") || k == "fbclid" || k == "gclid";
}

}  // namespace

Url Url::parse(std::string_view text) {
  for (unsigned char c : text) {
    if (c <= 0x20 || c == 0x7F) throw ParseError("malformed URL (whitespace or control character): " + std::string(text));
  }
  const auto sep = text.find("://");
  if (sep == std::string_view::npos || sep == 0) {
    throw ParseError("malformed URL (not absolute): " + std::string(text));
  }
  Url url;
  url.scheme = lower(text.substr(0, sep));
  if (url.scheme != "http" && url.scheme != "https") {
    throw ParseError("unsupported URL scheme '" + url.scheme + "'");
  }
  std::string_view rest = text.substr(sep + 3);
  const auto auth_end = rest.find_first_of("/?#");
  std::string_view authority = rest.substr(0, auth_end);
  rest = auth_end == std::string_view::npos ? std::string_view{} : rest.substr(auth_end);

  if (authority.find('@') != std::string_view::npos) {
    throw ParseError("malformed URL (userinfo not supported): " + std::string(text));
  }
  std::string_view host = authority;
  std::string_view port;
  if (!authority.empty() && authority.front() == '[') {
    const auto close = authority.find(']');
    if (close == std::string_view::npos) throw ParseError("malformed URL (IPv6 host): " + std::string(text));
    host = authority.substr(0, close + 1);
    if (close + 1 < authority.size()) {
      if (authority[close + 1] != ':') throw ParseError("malformed URL (host): " + std::string(text));
      port = authority.substr(close + 2);
    }
  } else if (const auto colon = authority.rfind(':'); colon != std::string_view::npos) {
    host = authority.substr(0, colon);
    port = authority.substr(colon + 1);
  }
  if (host.empty()) throw ParseError("malformed URL (empty host): " + std::string(text));
  url.host = lower(host);
  if (!port.empty()) {
    if (port.size() > 5 || !std::all_of(port.begin(), port.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw ParseError("malformed URL (port): " + std::string(text));
    }
    const int p = std::stoi(std::string(port));
    if (p < 1 || p > 65535) throw ParseError("malformed URL (port out of range): " + std::string(text));
    url.port = p;
  }

  if (const auto hash = rest.find('#'); hash != std::string_view::npos) {
    url.fragment = std::string(rest.substr(hash + 1));
    rest = rest.substr(0, hash);
  }
  if (const auto q = rest.find('?'); q != std::string_view::npos) {
    url.query = std::string(rest.substr(q + 1));
    rest = rest.substr(0, q);
  }
  url.path = rest.empty() ? "/" : std::string(rest);
  return url;
}

int Url::effective_port() const {
  if (port) return *port;
  return scheme == "https" ? 443 : 80;
}

std::string Url::authority() const {
  const int default_port = scheme == "https" ? 443 : 80;
  if (port && *port != default_port) return host + ":" + std::to_string(*port);
  return host;
}

std::string Url::target() const { return query ? path + "?" + *query : path; }

std::string Url::to_string() const {
  std::string out = scheme + "://" + authority() + path;
  if (query) out += "?" + *query;
  if (fragment) out += "#" + *fragment;
  return out;
}

std::optional<Url> Url::resolve(std::string_view reference) const {
  while (!reference.empty() && std::isspace(static_cast<unsigned char>(reference.front()))) reference.remove_prefix(1);
  while (!reference.empty() && std::isspace(static_cast<unsigned char>(reference.back()))) reference.remove_suffix(1);

  // scheme-qualified reference
  const auto first_special = reference.find_first_of(":/?#");
  if (first_special != std::string_view::npos && first_special > 0 && reference[first_special] == ':') {
    const std::string scheme_part = lower(reference.substr(0, first_special));
    if (scheme_part != "http" && scheme_part != "https") return std::nullopt;
    try {
      return Url::parse(reference);
    } catch (const ParseError&) {
      return std::nullopt;
    }
  }
  try {
    if (reference.starts_with("//")) return Url::parse(scheme + ":" + std::string(reference));

    Url out = *this;
    out.fragment.reset();
    std::string_view ref = reference;
    std::optional<std::string> frag;
    if (const auto hash = ref.find('#'); hash != std::string_view::npos) {
      frag = std::string(ref.substr(hash + 1));
      ref = ref.substr(0, hash);
    }
    std::optional<std::string> query_part;
    if (const auto q = ref.find('?'); q != std::string_view::npos) {
      query_part = std::string(ref.substr(q + 1));
      ref = ref.substr(0, q);
    }
    if (ref.empty()) {
      if (query_part) out.query = query_part;
    } else {
      std::string merged;
      if (ref.front() == '/') {
        merged = std::string(ref);
      } else {
        merged = path.substr(0, path.rfind('/') + 1) + std::string(ref);
      }
      out.path = remove_dot_segments(merged);
      out.query = query_part;
    }
    out.fragment = frag;
    return Url::parse(out.to_string());
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

std::string canonicalize_url(std::string_view text) {
  Url url = Url::parse(text);
  url.fragment.reset();
  if (url.port && *url.port == (url.scheme == "https" ? 443 : 80)) url.port.reset();

  while (url.path.size() > 1 && url.path.back() == '/') url.path.pop_back();

  if (url.query) {
    std::vector<std::string> params;
    std::string_view q = *url.query;
    std::size_t start = 0;
    while (start <= q.size()) {
      auto amp = q.find('&', start);
      if (amp == std::string_view::npos) amp = q.size();
      std::string_view param = q.substr(start, amp - start);
      if (!param.empty() && !is_tracking_param(param.substr(0, param.find('=')))) {
        params.emplace_back(param);
      }
      start = amp + 1;
    }
    std::stable_sort(params.begin(), params.end(), [](const std::string& a, const std::string& b) {
      return std::string_view(a).substr(0, a.find('=')) < std::string_view(b).substr(0, b.find('='));
    });
    if (params.empty()) {
      url.query.reset();
    } else {
      std::string joined;
      for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) joined.push_back('&');
        joined += params[i];
      }
      url.query = joined;
    }
  }
  return url.to_string();
}

}  // namespace factcheck::ingest
