#include "factcheck/ingest/crawl.hpp"

#include <algorithm>
#include <deque>
#include <regex>
#include <set>
#include <unordered_set>

#include "factcheck/ingest/charset.hpp"
#include "factcheck/ingest/extract.hpp"
#include "factcheck/ingest/html.hpp"
#include "factcheck/ingest/url.hpp"

namespace factcheck::ingest {
namespace {

std::vector<std::string> harvest_links(const FetchResult& page, const std::set<std::string>& hosts) {
  std::optional<std::string> charset = charset_from_content_type(page.content_type);
  if (!charset) charset = sniff_meta_charset(page.body_bytes);
  const auto doc = html::Document::parse(to_utf8(page.body_bytes, charset.value_or("utf-8")));
  const Url base = Url::parse(page.url);

  std::vector<std::string> out;
  for (html::NodeId id : doc.elements()) {
    const auto& node = doc.node(id);
    if (node.tag != "a") continue;
    const std::string* href = node.attribute("href");
    if (!href) continue;
    auto target = base.resolve(*href);
    if (!target || !hosts.contains(target->authority())) continue;
    out.push_back(canonicalize_url(target->to_string()));
  }
  return out;
}

}  // namespace

CrawlReport crawl_site(const SiteProfile& profile, std::size_t budget, Politeness& politeness,
                       const RecordSink& sink, const FetchOptions& options) {
  profile.validate();
  CrawlReport report;
  report.site_id = profile.site_id;
  const std::size_t limit = std::min(budget, profile.max_pages);

  std::set<std::string> hosts;
  std::deque<std::string> frontier;
  std::unordered_set<std::string> seen;
  std::unordered_set<std::string> seeds;
  for (const auto& seed : profile.seed_urls) {
    const Url url = Url::parse(seed);
    hosts.insert(url.authority());
    politeness.set_interval(url.authority(), profile.rate_limit);
    auto canonical = canonicalize_url(seed);
    if (seen.insert(canonical).second) {
      seeds.insert(canonical);
      frontier.push_back(std::move(canonical));
    }
  }
  std::optional<std::regex> article_re;
  if (!profile.article_url_pattern.empty()) article_re.emplace(profile.article_url_pattern);

  while (!frontier.empty() && report.fetched < limit) {
    const std::string url = std::move(frontier.front());
    frontier.pop_front();
    ++report.fetched;

    FetchResult page;
    try {
      page = fetch_page(url, politeness, options);
    } catch (const FetchError& e) {
      if (e.kind() == FetchErrorKind::kRobotsDenied) {
        ++report.skipped;
      } else {
        ++report.failed;
        if (seeds.contains(url) && e.retriable()) report.seed_unreachable = true;
      }
      report.errors.push_back(e.what());  // fetch errors already name the URL
      continue;
    }
    if (page.status < 200 || page.status >= 300) {
      ++report.failed;
      report.errors.push_back(url + ": HTTP " + std::to_string(page.status));
      continue;
    }
    if (!is_html_content_type(page.content_type)) {
      ++report.skipped;
      continue;
    }

    for (auto& link : harvest_links(page, hosts)) {
      if (seen.insert(link).second) frontier.push_back(std::move(link));
    }

    const bool is_article = !article_re || std::regex_search(Url::parse(page.url).path, *article_re);
    if (!is_article) {
      ++report.skipped;
      continue;
    }
    try {
      sink(extract_article(page, profile));
      ++report.extracted;
    } catch (const Error& e) {
      ++report.failed;
      report.errors.push_back(url + ": " + e.what());
    }
  }
  return report;
}

std::vector<ArticleRecord> dedupe(std::vector<ArticleRecord> records) {
  std::unordered_set<std::string> seen;
  std::vector<ArticleRecord> out;
  out.reserve(records.size());
  for (auto& r : records) {
    if (seen.insert(r.canonical_url).second) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace factcheck::ingest
