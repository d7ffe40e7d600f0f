#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "factcheck/error.hpp"
#include "factcheck/ingest/article.hpp"
#include "factcheck/ingest/fetch.hpp"
#include "factcheck/ingest/site_profile.hpp"

namespace factcheck::ingest {

class UnsupportedContentError : public Error {
 public:
  using Error::Error;
};

/// A required field ("title" or "body") matched nothing.
class ExtractionError : public Error {
 public:
  ExtractionError(std::string field, const std::string& what)
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

bool is_html_content_type(std::string_view content_type);

/// Parses ISO-8601 (date, optionally followed by a time part) and then each
/// extra strptime format. Returns YYYY-MM-DD or nothing.
std::optional<std::string> parse_date(std::string_view text,
                                      const std::vector<std::string>& formats = {});

ArticleRecord extract_article(const FetchResult& page, const SiteProfile& profile);

}  // namespace factcheck::ingest
