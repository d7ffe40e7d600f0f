#include "factcheck/ingest/site_profile.hpp"

#include <algorithm>
#include <regex>
#include <set>

#include <json.hpp>

#include "factcheck/error.hpp"
#include "factcheck/fs_util.hpp"
#include "factcheck/ingest/selector.hpp"
#include "factcheck/ingest/url.hpp"

namespace factcheck::ingest {
namespace {

using nlohmann::json;

const std::set<std::string, std::less<>> kRuleFields = {"title", "body", "published_at", "raw_verdict", "raw_topic"};

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

}  // namespace

void SiteProfile::validate() const {
  if (site_id.empty()) throw InvalidArgument("site profile: site_id is empty");
  for (char c : site_id) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) {
      throw InvalidArgument("site profile '" + site_id + "': site_id may only contain [A-Za-z0-9._-]");
    }
  }
  if (rate_limit.count() < 0) throw InvalidArgument("site profile '" + site_id + "': rate_limit_ms < 0");
  if (seed_urls.empty()) throw InvalidArgument("site profile '" + site_id + "': no seed_urls");
  for (const auto& seed : seed_urls) {
    try {
      Url::parse(seed);
    } catch (const ParseError& e) {
      throw InvalidArgument("site profile '" + site_id + "': bad seed url: " + e.what());
    }
  }
  for (const char* required : {"title", "body"}) {
    if (!extraction_rules.contains(required)) {
      throw InvalidArgument("site profile '" + site_id + "': extraction_rules lacks \"" + required + "\"");
    }
  }
  for (const auto& [field, selector] : extraction_rules) {
    if (!kRuleFields.contains(field)) {
      throw InvalidArgument("site profile '" + site_id + "': unknown extraction field \"" + field + "\"");
    }
    try {
      SelectorPath::parse(selector);
    } catch (const ParseError& e) {
      throw InvalidArgument("site profile '" + site_id + "': " + e.what());
    }
  }
  if (!article_url_pattern.empty()) {
    try {
      std::regex re(article_url_pattern);
    } catch (const std::regex_error&) {
      throw InvalidArgument("site profile '" + site_id + "': bad article_url_pattern");
    }
  }
}

SiteProfile parse_site_profile(const std::string& json_text) {
  SiteProfile p;
  try {
    const json j = json::parse(json_text);
    if (!j.is_object()) throw ParseError("site profile: top level must be an object");
    p.site_id = j.at("site_id").get<std::string>();
    p.display_name = get_or<std::string>(j, "display_name", p.site_id);
    p.seed_urls = j.at("seed_urls").get<std::vector<std::string>>();
    p.extraction_rules = j.at("extraction_rules").get<std::map<std::string, std::string>>();
    p.rate_limit = std::chrono::milliseconds(get_or<std::int64_t>(j, "rate_limit_ms", 1000));
    const auto max_pages = get_or<std::int64_t>(j, "max_pages", 1000);
    if (max_pages < 0) throw ParseError("site profile: max_pages < 0");
    p.max_pages = static_cast<std::size_t>(max_pages);
    p.article_url_pattern = get_or<std::string>(j, "article_url_pattern", "");
    p.date_formats = get_or<std::vector<std::string>>(j, "date_formats", {});
  } catch (const json::exception& e) {
    throw ParseError(std::string("site profile: ") + e.what());
  }
  p.validate();
  return p;
}

SiteProfile load_site_profile(const std::filesystem::path& path) {
  try {
    return parse_site_profile(read_file(path));
  } catch (const Error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::vector<SiteProfile> load_site_profiles(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(dir)) {
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<SiteProfile> out;
  std::set<std::string> ids;
  for (const auto& f : files) {
    auto profile = load_site_profile(f);
    if (!ids.insert(profile.site_id).second) {
      throw InvalidArgument(f.string() + ": duplicate site_id '" + profile.site_id + "'");
    }
    out.push_back(std::move(profile));
  }
  return out;
}

}  // namespace factcheck::ingest
