#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace factcheck::ingest {

/// Per-site crawl and extraction configuration, one JSON file per site:
///
///   {
///     "site_id": "truthmeter",
///     "display_name": "Truth-O-Meter",
///     "seed_urls": ["https://truthmeter.example/"],
///     "rate_limit_ms": 1000,
///     "max_pages": 200,
///     "article_url_pattern": "^/fact-check/",
///     "date_formats": ["%B %d, %Y"],
///     "extraction_rules": {
///       "title": "h1.headline", "body": "div.article p",
///       "published_at": "time@datetime", "raw_verdict": ".rating",
///       "raw_topic": "a.tag"
///     }
///   }
struct SiteProfile {
  std::string site_id;
  std::string display_name;
  std::vector<std::string> seed_urls;
  std::map<std::string, std::string> extraction_rules;
  std::chrono::milliseconds rate_limit{1000};
  std::size_t max_pages = 1000;
  /// ECMAScript regex searched in the URL path; pages that do not match are
  /// followed for links but never extracted. Empty = every page is an article.
  std::string article_url_pattern;
  /// strptime formats tried after ISO-8601.
  std::vector<std::string> date_formats;

  /// Throws InvalidArgument naming the first violated invariant.
  void validate() const;
};

SiteProfile parse_site_profile(const std::string& json_text);
SiteProfile load_site_profile(const std::filesystem::path& path);

/// Loads every *.json under `dir` (sorted by filename). Throws ParseError or
/// InvalidArgument; duplicate site_ids are rejected.
std::vector<SiteProfile> load_site_profiles(const std::filesystem::path& dir);

}  // namespace factcheck::ingest
