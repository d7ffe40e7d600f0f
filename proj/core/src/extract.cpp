#include "factcheck/ingest/extract.hpp"

#include <time.h>

#include <cctype>
#include <chrono>
#include <cstdio>
#include <regex>

#include "factcheck/hashing.hpp"
#include "factcheck/ingest/charset.hpp"
#include "factcheck/ingest/html.hpp"
#include "factcheck/ingest/selector.hpp"
#include "factcheck/ingest/url.hpp"

namespace factcheck::ingest {
namespace {

std::string media_type(std::string_view content_type) {
  std::string mt(content_type.substr(0, content_type.find(';')));
  std::string out;
  for (char c : mt) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::optional<std::string> format_date(int year, unsigned month, unsigned day) {
  const std::chrono::year_month_day ymd{std::chrono::year(year), std::chrono::month(month), std::chrono::day(day)};
  if (!ymd.ok() || year < 1000 || year > 9999) return std::nullopt;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year, month, day);
  return std::string(buf);
}

std::optional<std::string> select_first(const html::Document& doc, const SiteProfile& profile,
                                        const std::string& field) {
  const auto it = profile.extraction_rules.find(field);
  if (it == profile.extraction_rules.end()) return std::nullopt;
  return SelectorPath::parse(it->second).first(doc);
}

}  // namespace

std::string record_id_for(const std::string& canonical_url) { return sha256_hex(canonical_url); }

bool is_html_content_type(std::string_view content_type) {
  const std::string mt = media_type(content_type);
  return mt == "text/html" || mt == "application/xhtml+xml";
}

std::optional<std::string> parse_date(std::string_view text, const std::vector<std::string>& formats) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  if (s.empty()) return std::nullopt;

  static const std::regex iso(R"(^(\d{4})-(\d{2})-(\d{2})([T ].*)?$)");
  std::smatch m;
  if (std::regex_match(s, m, iso)) {
    return format_date(std::stoi(m[1]), static_cast<unsigned>(std::stoul(m[2])),
                       static_cast<unsigned>(std::stoul(m[3])));
  }
  for (const auto& fmt : formats) {
    struct tm tm {};
    tm.tm_mday = 0;
    const char* end = ::strptime(s.c_str(), fmt.c_str(), &tm);
    if (end == nullptr) continue;
    while (*end && std::isspace(static_cast<unsigned char>(*end))) ++end;
    if (*end != '\0' || tm.tm_mday == 0) continue;
    if (auto date = format_date(tm.tm_year + 1900, static_cast<unsigned>(tm.tm_mon + 1),
                                static_cast<unsigned>(tm.tm_mday))) {
      return date;
    }
  }
  return std::nullopt;
}

ArticleRecord extract_article(const FetchResult& page, const SiteProfile& profile) {
  if (!is_html_content_type(page.content_type)) {
    throw UnsupportedContentError(page.url + ": unsupported content type '" + page.content_type + "'");
  }
  std::optional<std::string> charset = charset_from_content_type(page.content_type);
  if (!charset) charset = sniff_meta_charset(page.body_bytes);
  const std::string text = to_utf8(page.body_bytes, charset.value_or("utf-8"));
  const html::Document doc = html::Document::parse(text);

  ArticleRecord record;
  record.canonical_url = canonicalize_url(page.url);
  record.record_id = record_id_for(record.canonical_url);
  record.site_id = profile.site_id;

  auto title = select_first(doc, profile, "title");
  if (!title) throw ExtractionError("title", page.url + ": title selector matched nothing");
  record.title = std::move(*title);

  const auto body_rule = profile.extraction_rules.find("body");
  std::string body;
  if (body_rule != profile.extraction_rules.end()) {
    for (const auto& part : SelectorPath::parse(body_rule->second).select(doc)) {
      if (!body.empty()) body.push_back(' ');
      body += part;
    }
  }
  if (body.empty()) throw ExtractionError("body", page.url + ": body selector matched nothing");
  record.body_text = std::move(body);

  if (auto raw_date = select_first(doc, profile, "published_at")) {
    record.published_at = parse_date(*raw_date, profile.date_formats);
  }
  record.raw_verdict = select_first(doc, profile, "raw_verdict");
  record.raw_topic = select_first(doc, profile, "raw_topic");
  return record;
}

}  // namespace factcheck::ingest
