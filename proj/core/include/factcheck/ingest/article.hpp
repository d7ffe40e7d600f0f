#pragma once

#include <optional>
#include <string>

namespace factcheck::ingest {

/// One extracted fact-check article.
struct ArticleRecord {
  std::string record_id;  // sha256_hex(canonical_url)
  std::string canonical_url;
  std::string site_id;
  std::string title;
  std::optional<std::string> published_at;  // YYYY-MM-DD
  std::string body_text;
  std::optional<std::string> raw_verdict;
  std::optional<std::string> raw_topic;

  friend bool operator==(const ArticleRecord&, const ArticleRecord&) = default;
};

std::string record_id_for(const std::string& canonical_url);

}  // namespace factcheck::ingest
