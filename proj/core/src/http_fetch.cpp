#include "factcheck/ingest/fetch.hpp"

#include <httplib.h>

#include "factcheck/ingest/url.hpp"

namespace factcheck::ingest {
namespace {

struct RawResponse {
  int status = 0;
  std::string content_type;
  std::string location;
  std::string body;
};

RawResponse http_get(const Url& url, const FetchOptions& options) {
  const std::string origin = url.scheme + "://" + url.host + ":" + std::to_string(url.effective_port());
  httplib::Client client(origin);
  client.set_follow_location(false);
  client.set_connection_timeout(options.timeout);
  client.set_read_timeout(options.timeout);
  client.set_write_timeout(options.timeout);
  client.set_keep_alive(false);

  const httplib::Headers headers = {{"User-Agent", options.user_agent}, {"Accept", "text/html,*/*;q=0.8"}};
  const auto started = std::chrono::steady_clock::now();
  auto res = client.Get(url.target(), headers);
  if (!res) {
    const auto err = res.error();
    const auto elapsed = std::chrono::steady_clock::now() - started;
    const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                           (err == httplib::Error::Read && elapsed >= options.timeout);
    throw FetchError(timed_out ? FetchErrorKind::kTimeout : FetchErrorKind::kNetwork,
                     url.to_string() + ": " + httplib::to_string(err));
  }
  RawResponse out;
  out.status = res->status;
  out.content_type = res->get_header_value("Content-Type");
  out.location = res->get_header_value("Location");
  out.body = std::move(res->body);
  return out;
}

const RobotsRules& robots_for(const Url& url, Politeness& politeness, const FetchOptions& options,
                              std::optional<RobotsRules>& holder) {
  const std::string origin = url.scheme + "://" + url.authority();
  holder = politeness.cached_robots(origin);
  if (holder) return *holder;

  Url robots_url = url;
  robots_url.path = "/robots.txt";
  robots_url.query.reset();
  robots_url.fragment.reset();
  politeness.acquire(url.authority());
  const RawResponse res = http_get(robots_url, options);  // network failures propagate
  RobotsRules rules;
  if (res.status >= 200 && res.status < 300) {
    rules = RobotsRules::parse(res.body, options.user_agent);
  } else if (res.status >= 500) {
    rules = RobotsRules::disallow_all();
  } else {
    rules = RobotsRules::allow_all();
  }
  politeness.store_robots(origin, rules);
  holder = std::move(rules);
  return *holder;
}

bool is_redirect(int status) {
  return status == 301 || status == 302 || status == 303 || status == 307 || status == 308;
}

}  // namespace

FetchResult fetch_page(const std::string& url_text, Politeness& politeness, const FetchOptions& options) {
  Url url;
  try {
    url = Url::parse(url_text);
  } catch (const ParseError& e) {
    throw FetchError(FetchErrorKind::kInvalidUrl, url_text + ": " + e.what());
  }

  for (int redirects = 0;; ++redirects) {
    if (options.respect_robots) {
      std::optional<RobotsRules> holder;
      const RobotsRules& rules = robots_for(url, politeness, options, holder);
      if (!rules.allowed(url.target())) {
        throw FetchError(FetchErrorKind::kRobotsDenied, url.to_string() + ": disallowed by robots.txt");
      }
    }
    politeness.acquire(url.authority());
    RawResponse res = http_get(url, options);

    if (is_redirect(res.status) && !res.location.empty()) {
      if (redirects >= options.max_redirects) {
        throw FetchError(FetchErrorKind::kTooManyRedirects,
                         url.to_string() + ": more than " + std::to_string(options.max_redirects) + " redirects");
      }
      auto next = url.resolve(res.location);
      if (!next) {
        throw FetchError(FetchErrorKind::kInvalidUrl, url.to_string() + ": bad Location '" + res.location + "'");
      }
      url = *next;
      continue;
    }

    FetchResult out;
    url.fragment.reset();
    out.url = url.to_string();
    out.status = res.status;
    out.content_type = res.content_type;
    out.body_bytes = std::move(res.body);
    out.fetched_at = std::chrono::system_clock::now();
    return out;
  }
}

}  // namespace factcheck::ingest
