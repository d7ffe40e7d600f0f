#pragma once

#include <chrono>
#include <cstdint>
#include <string>

#include "factcheck/error.hpp"
#include "factcheck/ingest/politeness.hpp"

namespace factcheck::ingest {

struct FetchResult {
  std::string url;  // final URL after redirects
  int status = 0;
  std::string content_type;
  std::string body_bytes;
  std::chrono::system_clock::time_point fetched_at;
};

enum class FetchErrorKind {
  kNetwork,
  kTimeout,
  kTooManyRedirects,
  kRobotsDenied,
  kInvalidUrl,
};

/// The message always starts with the URL being fetched.
class FetchError : public Error {
 public:
  FetchError(FetchErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}

  FetchErrorKind kind() const { return kind_; }
  /// Network failures and timeouts may succeed later; the rest never will.
  bool retriable() const { return kind_ == FetchErrorKind::kNetwork || kind_ == FetchErrorKind::kTimeout; }

 private:
  FetchErrorKind kind_;
};

struct FetchOptions {
  std::string user_agent = "factcheck-crawler/0.3";
  std::chrono::milliseconds timeout{10000};
  int max_redirects = 5;
  bool respect_robots = true;
};

/// GETs `url` politely: consults (and caches) the host's robots.txt, waits
/// for the host's rate-limit slot before every request, and follows up to
/// options.max_redirects redirects. HTTP error statuses are returned, not
/// thrown.
FetchResult fetch_page(const std::string& url, Politeness& politeness,
                       const FetchOptions& options = {});

}  // namespace factcheck::ingest
