#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "factcheck/ingest/article.hpp"
#include "factcheck/ingest/fetch.hpp"
#include "factcheck/ingest/site_profile.hpp"

namespace factcheck::ingest {

/// Invariant: fetched == extracted + failed + skipped.
struct CrawlReport {
  std::string site_id;
  std::size_t fetched = 0;    // URLs handed to the fetcher
  std::size_t extracted = 0;  // article records emitted
  std::size_t failed = 0;     // network/HTTP/extraction failures
  std::size_t skipped = 0;    // non-article, non-HTML or robots-denied
  bool seed_unreachable = false;
  std::vector<std::string> errors;  // "url: message", one per failure

  friend bool operator==(const CrawlReport&, const CrawlReport&) = default;
};

using RecordSink = std::function<void(ArticleRecord)>;

/// Breadth-first crawl from the profile's seeds, restricted to the seed
/// hosts, visiting at most min(budget, profile.max_pages) URLs. Individual
/// page failures are recorded and never abort the crawl.
CrawlReport crawl_site(const SiteProfile& profile, std::size_t budget, Politeness& politeness,
                       const RecordSink& sink, const FetchOptions& options = {});

/// Keeps the first record per canonical_url, preserving order.
std::vector<ArticleRecord> dedupe(std::vector<ArticleRecord> records);

}  // namespace factcheck::ingest
