#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace factcheck::ingest {

/// An absolute http(s) URL split into its components. Components keep their
/// original percent-encoding.
struct Url {
  std::string scheme;  // "http" or "https", lowercase
  std::string host;    // lowercase
  std::optional<int> port;
  std::string path;    // always starts with '/'
  std::optional<std::string> query;
  std::optional<std::string> fragment;

  static Url parse(std::string_view text);

  int effective_port() const;
  /// "host" or "host:port" when the port is not the scheme default.
  std::string authority() const;
  /// Path plus query, as sent in a request line.
  std::string target() const;
  std::string to_string() const;

  /// Resolves a (possibly relative) reference against this URL.
  std::optional<Url> resolve(std::string_view reference) const;
};

/// Lowercases host, drops fragment, default port and tracking parameters
/// (utm_*, fbclid, gclid), sorts the remaining query by key and strips a
/// trailing slash from non-root paths. Idempotent. Throws ParseError.
std::string canonicalize_url(std::string_view url);

}  // namespace factcheck::ingest
